#include "descent_forge/instance.hpp"

#include <map>
#include <sstream>
#include <variant>

namespace descent {

std::string ParseError::describe() const {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
}

namespace {

// --- Tokenizer ---------------------------------------------------------------

struct Token {
    enum Kind { lbracket, rbracket, equals, comma, dot, integer, string, ident, end } kind;
    std::string text;
    i64 value = 0;
    u32 line = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        if (pos_ >= s_.size()) {
            t.kind = Token::end;
            return t;
        }
        char c = s_[pos_];
        switch (c) {
            case '[': ++pos_; t.kind = Token::lbracket; return t;
            case ']': ++pos_; t.kind = Token::rbracket; return t;
            case '=': ++pos_; t.kind = Token::equals; return t;
            case ',': ++pos_; t.kind = Token::comma; return t;
            case '.': ++pos_; t.kind = Token::dot; return t;
            case '"': return string_token();
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return integer_token();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident_token();
        throw Error("line " + std::to_string(line_) + ": unexpected character '" +
                    std::string(1, c) + "'");
    }

private:
    void skip_space_and_comments() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    Token string_token() {
        Token t;
        t.kind = Token::string;
        t.line = line_;
        ++pos_;  // opening quote
        while (pos_ < s_.size() && s_[pos_] != '"' && s_[pos_] != '\n') t.text += s_[pos_++];
        if (pos_ >= s_.size() || s_[pos_] != '"')
            throw Error("line " + std::to_string(line_) + ": unterminated string");
        ++pos_;
        return t;
    }

    Token integer_token() {
        Token t;
        t.kind = Token::integer;
        t.line = line_;
        size_t start = pos_;
        if (s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        t.text = s_.substr(start, pos_ - start);
        if (t.text.empty() || t.text == "-")
            throw Error("line " + std::to_string(line_) + ": bad integer");
        t.value = std::stoll(t.text);
        return t;
    }

    Token ident_token() {
        Token t;
        t.kind = Token::ident;
        t.line = line_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                t.text += s_[pos_++];
            else
                break;
        }
        return t;
    }

    const std::string& s_;
    size_t pos_ = 0;
    u32 line_ = 1;
};

// --- Parsed document ----------------------------------------------------------

struct Value;
using Array = std::vector<Value>;
struct Value {
    std::variant<i64, std::string, Array> v;
    u32 line = 0;
};

struct KeyValue {
    Value value;
    u32 line = 0;
};
using Section = std::map<std::string, KeyValue>;

struct Document {
    std::map<std::string, Section> sections;
    std::vector<std::string> order;  // section names in appearance order
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { advance(); }

    Document parse() {
        Document doc;
        std::string current;
        while (tok_.kind != Token::end) {
            if (tok_.kind == Token::lbracket) {
                current = section_header();
                if (!doc.sections.count(current)) doc.order.push_back(current);
                doc.sections[current];  // create
            } else if (tok_.kind == Token::ident) {
                std::string key = tok_.text;
                u32 line = tok_.line;
                advance();
                expect(Token::equals, "'='");
                Value v = value();
                if (current.empty())
                    throw Error("line " + std::to_string(line) + ": key outside any section");
                doc.sections[current][key] = KeyValue{std::move(v), line};
            } else {
                throw Error("line " + std::to_string(tok_.line) + ": expected section or key");
            }
        }
        return doc;
    }

private:
    void advance() { tok_ = lex_.next(); }

    void expect(Token::Kind k, const char* what) {
        if (tok_.kind != k)
            throw Error("line " + std::to_string(tok_.line) + ": expected " + what);
        advance();
    }

    std::string section_header() {
        advance();  // '['
        std::string name;
        while (tok_.kind == Token::ident || tok_.kind == Token::dot) {
            name += tok_.kind == Token::dot ? "." : tok_.text;
            advance();
        }
        if (name.empty())
            throw Error("line " + std::to_string(tok_.line) + ": empty section name");
        expect(Token::rbracket, "']'");
        return name;
    }

    Value value() {
        Value v;
        v.line = tok_.line;
        if (tok_.kind == Token::integer) {
            v.v = tok_.value;
            advance();
        } else if (tok_.kind == Token::string) {
            v.v = tok_.text;
            advance();
        } else if (tok_.kind == Token::lbracket) {
            advance();
            Array a;
            while (tok_.kind != Token::rbracket) {
                a.push_back(value());
                if (tok_.kind == Token::comma) advance();
            }
            advance();  // ']'
            v.v = std::move(a);
        } else {
            throw Error("line " + std::to_string(v.line) + ": expected a value");
        }
        return v;
    }

    Lexer lex_;
    Token tok_;
};

// --- Spec assembly -------------------------------------------------------------

struct Builder {
    const Document& doc;
    std::vector<ParseError>& errors;
    PrimeField field{2};

    void fail(u32 line, const std::string& field_name, const std::string& message) {
        errors.push_back(ParseError{line, field_name, message});
    }

    const Section* section(const std::string& name) {
        auto it = doc.sections.find(name);
        return it == doc.sections.end() ? nullptr : &it->second;
    }

    const KeyValue* key(const Section& s, const std::string& k) {
        auto it = s.find(k);
        return it == s.end() ? nullptr : &it->second;
    }

    std::optional<i64> int_key(const Section& s, const std::string& k, const std::string& where,
                               bool required) {
        const KeyValue* kv = key(s, k);
        if (!kv) {
            if (required) fail(0, where, "missing key '" + k + "'");
            return std::nullopt;
        }
        if (!std::holds_alternative<i64>(kv->value.v)) {
            fail(kv->line, where, "'" + k + "' must be an integer");
            return std::nullopt;
        }
        return std::get<i64>(kv->value.v);
    }

    std::optional<std::string> string_key(const Section& s, const std::string& k,
                                          const std::string& where, bool required) {
        const KeyValue* kv = key(s, k);
        if (!kv) {
            if (required) fail(0, where, "missing key '" + k + "'");
            return std::nullopt;
        }
        if (!std::holds_alternative<std::string>(kv->value.v)) {
            fail(kv->line, where, "'" + k + "' must be a string");
            return std::nullopt;
        }
        return std::get<std::string>(kv->value.v);
    }

    // A flat integer vector, entries reduced mod p.
    std::optional<Vec> vec_value(const Value& v, u32 expect_len, const std::string& where) {
        if (!std::holds_alternative<Array>(v.v)) {
            fail(v.line, where, "expected an array");
            return std::nullopt;
        }
        Vec out;
        for (const Value& e : std::get<Array>(v.v)) {
            if (!std::holds_alternative<i64>(e.v)) {
                fail(e.line, where, "expected integer entries");
                return std::nullopt;
            }
            out.push_back(field.reduce_signed(std::get<i64>(e.v)));
        }
        if (out.size() != expect_len) {
            fail(v.line, where,
                 "expected " + std::to_string(expect_len) + " entries, got " +
                     std::to_string(out.size()));
            return std::nullopt;
        }
        return out;
    }

    // An array of `rows` vectors of length `cols`.
    std::optional<std::vector<Vec>> rows_value(const Value& v, u32 rows, u32 cols,
                                               const std::string& where) {
        if (!std::holds_alternative<Array>(v.v)) {
            fail(v.line, where, "expected an array of rows");
            return std::nullopt;
        }
        const Array& a = std::get<Array>(v.v);
        if (a.size() != rows) {
            fail(v.line, where,
                 "expected " + std::to_string(rows) + " rows, got " + std::to_string(a.size()));
            return std::nullopt;
        }
        std::vector<Vec> out;
        for (const Value& r : a) {
            auto row = vec_value(r, cols, where);
            if (!row) return std::nullopt;
            out.push_back(std::move(*row));
        }
        return out;
    }

    std::optional<FiniteAlgebra> algebra(const std::string& name) {
        const Section* s = section("algebra." + name);
        std::string where = "algebra." + name;
        if (!s) {
            fail(0, where, "missing section");
            return std::nullopt;
        }
        auto dim = int_key(*s, "dim", where, true);
        if (!dim || *dim < 0) return std::nullopt;
        u32 d = static_cast<u32>(*dim);
        const KeyValue* unit = key(*s, "unit");
        const KeyValue* mul = key(*s, "mul");
        if (!unit || !mul) {
            fail(0, where, "needs 'unit' and 'mul'");
            return std::nullopt;
        }
        auto uv = vec_value(unit->value, d, where + ".unit");
        auto rows = rows_value(mul->value, d * d, d, where + ".mul");
        if (!uv || !rows) return std::nullopt;
        std::vector<Vec> sc = *rows;
        FiniteAlgebra a(field, d, std::move(sc), *uv);
        for (const AlgebraDefect& defect : validate_algebra(a))
            fail(mul->line, where, defect.describe());
        return errors.empty() ? std::optional<FiniteAlgebra>(a) : std::nullopt;
    }
};

// Matrices are written as arrays of rows; a stack of square matrices (one per
// basis element) is a single array of count*dim rows.
std::vector<Matrix> unstack(const std::vector<Vec>& rows, u32 count, u32 dim, PrimeField f) {
    std::vector<Matrix> out;
    for (u32 k = 0; k < count; ++k) {
        Matrix m(dim, dim, f);
        for (u32 r = 0; r < dim; ++r) m.set_row(r, rows[size_t(k) * dim + r]);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

ParseResult parse_instance(const std::string& text) {
    ParseResult result;
    Document doc;
    try {
        doc = Parser(text).parse();
    } catch (const Error& e) {
        result.errors.push_back(ParseError{0, "", e.what()});
        return result;
    }

    Builder b{doc, result.errors, PrimeField(2)};

    const Section* inst = b.section("instance");
    if (!inst) {
        b.fail(0, "instance", "missing section");
        return result;
    }
    auto p = b.int_key(*inst, "p", "instance", true);
    if (!p) return result;
    if (*p < 2 || *p > 1000003 || !is_prime(static_cast<u32>(*p))) {
        b.fail(b.key(*inst, "p")->line, "instance.p", "modulus must be prime");
        return result;
    }
    b.field = PrimeField(static_cast<u32>(*p));

    InstanceSpec spec;
    spec.p = static_cast<u32>(*p);
    spec.source = text;
    if (auto n = b.string_key(*inst, "name", "instance", false)) spec.name = *n;
    if (auto s = b.int_key(*inst, "seed", "instance", false)) spec.seed = static_cast<u64>(*s);

    const Section* ext = b.section("extension");
    if (!ext) {
        b.fail(0, "extension", "missing section");
        return result;
    }
    auto base_name = b.string_key(*ext, "base", "extension", true);
    auto target_name = b.string_key(*ext, "target", "extension", true);
    if (!base_name || !target_name) return result;
    auto base = b.algebra(*base_name);
    auto target = b.algebra(*target_name);
    if (!base || !target) return result;

    const KeyValue* map = b.key(*ext, "map");
    if (!map) {
        b.fail(0, "extension", "missing key 'map'");
        return result;
    }
    auto rows = b.rows_value(map->value, base->dim(), target->dim(), "extension.map");
    if (!rows) return result;
    // Row k of the file is the image of basis vector k, i.e. column k of i.
    Matrix imat(target->dim(), base->dim(), b.field);
    for (u32 k = 0; k < base->dim(); ++k) imat.set_col(k, (*rows)[k]);
    spec.extension = Extension(*base, *target, imat);
    for (const MorphismDefect& d : validate_morphism(spec.extension))
        b.fail(map->line, "extension", d.describe());
    if (!result.errors.empty()) return result;

    if (const Section* cm = b.section("comatrix")) {
        auto aname = b.string_key(*cm, "target", "comatrix", true);
        auto dim = b.int_key(*cm, "dim", "comatrix", true);
        if (!aname || !dim || *dim < 0) return result;
        auto aalg = b.algebra(*aname);
        if (!aalg) return result;
        u32 d = static_cast<u32>(*dim);
        const KeyValue* left = b.key(*cm, "left");
        const KeyValue* right = b.key(*cm, "right");
        if (!left || !right) {
            b.fail(0, "comatrix", "needs 'left' and 'right' action stacks");
            return result;
        }
        auto lrows = b.rows_value(left->value, base->dim() * d, d, "comatrix.left");
        auto rrows = b.rows_value(right->value, aalg->dim() * d, d, "comatrix.right");
        if (!lrows || !rrows) return result;
        Bimodule m(*base, *aalg, d, unstack(*lrows, base->dim(), d, b.field),
                   unstack(*rrows, aalg->dim(), d, b.field));
        for (const BimoduleDefect& defect : validate_bimodule(m))
            b.fail(left->line, "comatrix", defect.describe());
        if (!result.errors.empty()) return result;
        spec.evaluation = std::move(m);
    }

    if (const Section* budgets = b.section("budgets")) {
        if (auto s = b.int_key(*budgets, "subspace", "budgets", false))
            spec.subspace_budget = static_cast<u64>(*s);
        if (auto e = b.int_key(*budgets, "endo", "budgets", false))
            spec.endo_budget = static_cast<u64>(*e);
    }

    if (!result.errors.empty()) return result;
    result.spec = std::move(spec);
    return result;
}

namespace {

void write_vec(std::ostringstream& out, const Vec& v) {
    out << "[";
    for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
    out << "]";
}

void write_rows(std::ostringstream& out, const std::string& key,
                const std::vector<Vec>& rows) {
    out << key << " = [\n";
    for (const Vec& r : rows) {
        out << "  ";
        write_vec(out, r);
        out << ",\n";
    }
    out << "]\n";
}

void write_algebra(std::ostringstream& out, const std::string& name, const FiniteAlgebra& a) {
    out << "\n[algebra." << name << "]\n";
    out << "dim = " << a.dim() << "\n";
    out << "unit = ";
    write_vec(out, a.unit());
    out << "\n";
    std::vector<Vec> rows;
    for (u32 i = 0; i < a.dim(); ++i)
        for (u32 j = 0; j < a.dim(); ++j) rows.push_back(a.basis_product(i, j));
    write_rows(out, "mul", rows);
}

}  // namespace

std::string serialize_instance(const InstanceSpec& s) {
    std::ostringstream out;
    out << "[instance]\n";
    out << "name = \"" << s.name << "\"\n";
    out << "p = " << s.p << "\n";
    if (s.seed != 0) out << "seed = " << s.seed << "\n";
    write_algebra(out, "B", s.extension.source());
    write_algebra(out, "S", s.extension.target());
    out << "\n[extension]\n";
    out << "base = \"B\"\n";
    out << "target = \"S\"\n";
    std::vector<Vec> rows;
    for (u32 k = 0; k < s.extension.source().dim(); ++k)
        rows.push_back(s.extension.matrix().col(k));
    write_rows(out, "map", rows);
    if (s.evaluation) {
        const Bimodule& m = *s.evaluation;
        write_algebra(out, "A", m.right_alg());
        out << "\n[comatrix]\n";
        out << "target = \"A\"\n";
        out << "dim = " << m.dim() << "\n";
        std::vector<Vec> lrows, rrows;
        for (u32 t = 0; t < m.left_alg().dim(); ++t)
            for (u32 r = 0; r < m.dim(); ++r) lrows.push_back(m.left_action_basis(t).row(r));
        for (u32 t = 0; t < m.right_alg().dim(); ++t)
            for (u32 r = 0; r < m.dim(); ++r) rrows.push_back(m.right_action_basis(t).row(r));
        write_rows(out, "left", lrows);
        write_rows(out, "right", rrows);
    }
    if (s.subspace_budget != default_subspace_budget || s.endo_budget != default_endo_budget) {
        out << "\n[budgets]\n";
        if (s.subspace_budget != default_subspace_budget)
            out << "subspace = " << s.subspace_budget << "\n";
        if (s.endo_budget != default_endo_budget) out << "endo = " << s.endo_budget << "\n";
    }
    return out.str();
}

namespace {

InstanceSpec make_spec(std::string name, u32 p, Extension ext,
                       std::optional<Bimodule> evaluation = std::nullopt) {
    InstanceSpec s;
    s.name = std::move(name);
    s.p = p;
    s.extension = std::move(ext);
    s.evaluation = std::move(evaluation);
    s.source = serialize_instance(s);
    return s;
}

Extension diagonal_embedding(PrimeField f) {
    FiniteAlgebra b = field_algebra(f);
    FiniteAlgebra s = product_field_algebra(f);
    Matrix m(2, 1, f);
    m(0, 0) = 1;
    m(1, 0) = 1;
    return Extension(b, s, m);
}

Extension constants_in_dual_numbers(PrimeField f) {
    Matrix m(2, 1, f);
    m(0, 0) = 1;
    return Extension(field_algebra(f), dual_numbers_algebra(f), m);
}

Extension gf2_in_gf4() {
    PrimeField f(2);
    Matrix m(2, 1, f);
    m(0, 0) = 1;
    return Extension(field_algebra(f), gf4_algebra(), m);
}

Extension scalars_in_mat2(PrimeField f) {
    Matrix m(4, 1, f);
    m(0, 0) = 1;
    m(3, 0) = 1;
    return Extension(field_algebra(f), matrix_algebra(f, 2), m);
}

Extension diagonal_in_mat2(PrimeField f) {
    Matrix m(4, 2, f);
    m(0, 0) = 1;
    m(3, 1) = 1;
    return Extension(diagonal_algebra(f, 2), matrix_algebra(f, 2), m);
}

Bimodule column_bimodule(PrimeField f) {
    FiniteAlgebra b = diagonal_algebra(f, 2);
    FiniteAlgebra k = field_algebra(f);
    Matrix e11(2, 2, f), e22(2, 2, f);
    e11(0, 0) = 1;
    e22(1, 1) = 1;
    return Bimodule(b, k, 2, {e11, e22}, {Matrix::identity(2, f)});
}

Bimodule plane_bimodule(PrimeField f) {
    FiniteAlgebra k = field_algebra(f);
    Matrix id = Matrix::identity(2, f);
    return Bimodule(k, k, 2, {id}, {id});
}

}  // namespace

std::optional<std::string> builtin_instance(const std::string& name) {
    auto paren = [&](const std::string& prefix) -> std::optional<u32> {
        if (name.size() <= prefix.size() + 2 || name.compare(0, prefix.size(), prefix) != 0)
            return std::nullopt;
        if (name[prefix.size()] != '(' || name.back() != ')') return std::nullopt;
        std::string digits = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
        if (digits.empty()) return std::nullopt;
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        u32 p = static_cast<u32>(std::stoul(digits));
        if (!is_prime(p)) return std::nullopt;
        return p;
    };

    if (auto p = paren("id-ext")) {
        PrimeField f(*p);
        FiniteAlgebra k = field_algebra(f);
        return serialize_instance(
            make_spec(name, *p, Extension(k, k, Matrix::identity(1, f))));
    }
    if (auto p = paren("split2"))
        return serialize_instance(make_spec(name, *p, diagonal_embedding(PrimeField(*p))));
    if (auto p = paren("dual-numbers"))
        return serialize_instance(make_spec(name, *p, constants_in_dual_numbers(PrimeField(*p))));
    if (name == "field4") return serialize_instance(make_spec(name, 2, gf2_in_gf4()));
    if (auto p = paren("mat2"))
        return serialize_instance(make_spec(name, *p, scalars_in_mat2(PrimeField(*p))));
    if (auto p = paren("diag-mat2"))
        return serialize_instance(make_spec(name, *p, diagonal_in_mat2(PrimeField(*p))));
    if (auto p = paren("comatrix-mat2")) {
        Bimodule m = plane_bimodule(PrimeField(*p));
        return serialize_instance(make_spec(name, *p, end_algebra(m).unit_map, m));
    }
    if (auto p = paren("comatrix-diag-mat2")) {
        Bimodule m = column_bimodule(PrimeField(*p));
        return serialize_instance(make_spec(name, *p, end_algebra(m).unit_map, m));
    }
    return std::nullopt;
}

std::vector<std::string> builtin_names(u32 p) {
    std::string ps = "(" + std::to_string(p) + ")";
    std::vector<std::string> names = {"id-ext" + ps,    "split2" + ps,
                                      "dual-numbers" + ps, "mat2" + ps,
                                      "diag-mat2" + ps, "comatrix-mat2" + ps,
                                      "comatrix-diag-mat2" + ps};
    if (p == 2) names.insert(names.begin() + 3, "field4");
    return names;
}

}  // namespace descent
