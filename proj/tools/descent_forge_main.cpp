// Command-line surface: parse an instance (file or built-in name), run the
// verification suites, and emit machine-readable JSON reports.
//
// Exit codes: 0 all asserted verdicts pass; 1 a verdict failed (or a
// mathematically guaranteed identity broke); 2 invalid input; 3 a resource
// guard fired.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "descent_forge/fuzz.hpp"

using namespace descent;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verdict = 1;
constexpr int exit_input = 2;
constexpr int exit_guard = 3;

std::string load_instance_text(const std::string& name) {
    if (auto builtin = builtin_instance(name)) return *builtin;
    std::ifstream in(name);
    if (!in) throw Error("no built-in instance or readable file named '" + name + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

InstanceSpec parse_or_fail(const std::string& name) {
    ParseResult r = parse_instance(load_instance_text(name));
    if (!r.ok()) {
        for (const ParseError& e : r.errors) std::cerr << "error: " << e.describe() << "\n";
        throw Error("instance '" + name + "' is invalid");
    }
    return *r.spec;
}

void write_json(const std::string& path, const Json& j) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

int report_exit(const VerificationReport& rep) {
    if (!rep.budget_guard.empty()) return exit_guard;
    return rep.verdict_failure ? exit_verdict : exit_ok;
}

void print_verdicts(const VerificationReport& rep) {
    if (!rep.budget_guard.empty())
        std::cout << "guard fired: " << rep.budget_guard << "\n";
    for (const auto& [name, v] : rep.json["verdicts"].items())
        std::cout << "  " << v["status"].get<std::string>() << "  " << name
                  << (v["status"] == "observed"
                          ? std::string(" (holds: ") + (v["holds"] == true ? "yes" : "no") + ")"
                          : "")
                  << "\n";
}

struct CommonArgs {
    std::string file;
    std::string json_out;
    u64 subspace_budget = default_subspace_budget;
    u64 endo_budget = default_endo_budget;
    bool timing = false;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* c, bool with_file = true) {
        cmd = c;
        if (with_file)
            c->add_option("file", file, "instance file path or built-in name")->required();
        c->add_option("--json", json_out, "write the JSON report here ('-' for stdout)");
        c->add_option("--subspace-budget", subspace_budget,
                      "cap on enumerated subspaces per lattice walk");
        c->add_option("--endo-budget", endo_budget,
                      "cap on enumerated endomorphism candidates");
        c->add_flag("--timing", timing,
                    "record wall-clock timings (breaks byte-reproducibility)");
    }

    InstanceSpec spec() const {
        InstanceSpec s = parse_or_fail(file);
        if (cmd->count("--subspace-budget")) s.subspace_budget = subspace_budget;
        if (cmd->count("--endo-budget")) s.endo_budget = endo_budget;
        return s;
    }
};

int run_check(const CommonArgs& args, const std::string& which) {
    auto suite = suite_from_name(which);
    if (!suite) throw Error("unknown suite '" + which + "'");
    InstanceSpec spec = args.spec();
    VerificationReport rep = run_suite(spec, {.which = *suite, .record_timing = args.timing});
    const Json& inst = rep.json["instance"];
    std::cout << "instance " << inst["name"].get<std::string>() << " (p=" << inst["p"]
              << ", base dim " << inst["dims"]["base"] << ", target dim "
              << inst["dims"]["target"] << ")\n";
    const Json& cert = rep.json["certificate"];
    if (cert["present"] == true)
        std::cout << "certificate: " << cert["kind"].get<std::string>()
                  << (cert["verified"] == true ? " (verified)" : " (FAILED re-verification)")
                  << "\n";
    else
        std::cout << "certificate: none; statements reported as observations\n";
    print_verdicts(rep);
    write_json(args.json_out, rep.json);
    return report_exit(rep);
}

int run_endos(const CommonArgs& args) {
    InstanceSpec spec = args.spec();
    VerificationReport rep = run_suite(spec, {.which = Suite::gamma, .record_timing = args.timing});
    if (rep.budget_guard.empty()) {
        const Json& em = rep.json["monoids"]["endomorphisms"];
        std::cout << em["count"] << " coring endomorphisms, "
                  << em["automorphisms"].size() << " invertible\n";
        for (u32 k = 0; k < em["matrices"].size(); ++k) {
            std::cout << "g" << k << (k == em["identity"] ? " (identity)" : "") << ":\n";
            for (const auto& row : em["matrices"][k]) {
                std::cout << "  ";
                for (const auto& x : row) std::cout << x << " ";
                std::cout << "\n";
            }
        }
    } else {
        std::cout << "guard fired: " << rep.budget_guard << "\n";
    }
    write_json(args.json_out, rep.json);
    return report_exit(rep);
}

int run_invertibles(const CommonArgs& args) {
    InstanceSpec spec = args.spec();
    VerificationReport rep = run_suite(spec, {.which = Suite::gamma, .record_timing = args.timing});
    if (rep.budget_guard.empty()) {
        const Json& sb = rep.json["monoids"]["subbimodules"];
        const Json& gr = rep.json["gamma"]["group"];
        std::cout << sb["count"] << " subbimodules; " << sb["left_invertible"].size()
                  << " left-invertible, " << sb["right_invertible"].size()
                  << " right-invertible, " << gr["invertibles"].size() << " invertible\n";
        for (const auto& idx : gr["invertibles"]) {
            std::cout << "element " << idx << ", basis rows:\n";
            for (const auto& row : sb["labels"][idx.get<u32>()]) {
                std::cout << "  ";
                for (const auto& x : row) std::cout << x << " ";
                std::cout << "\n";
            }
        }
        std::cout << "group maps onto the coring automorphisms: "
                  << (gr["bijective"] == true ? "yes" : "no") << "\n";
    } else {
        std::cout << "guard fired: " << rep.budget_guard << "\n";
    }
    write_json(args.json_out, rep.json);
    return report_exit(rep);
}

int run_comatrix(const CommonArgs& args) {
    InstanceSpec spec = args.spec();
    if (!spec.evaluation)
        throw Error("instance has no comatrix block; nothing to transport");
    VerificationReport rep =
        run_suite(spec, {.which = Suite::comatrix, .record_timing = args.timing});
    if (rep.budget_guard.empty()) {
        const Json& g0 = rep.json["gamma0"];
        std::cout << "comatrix coring carrier dim " << g0["carrier_dim"]
                  << ", evaluation iso " << (g0["evaluation_iso_bijective"] == true ? "ok" : "BROKEN")
                  << ", " << g0["endomorphisms"]["count"] << " endomorphisms\n";
        std::cout << "triangle identity checked on " << g0["triangle"]["checked"]
                  << " elements, " << g0["triangle"]["violations"].size() << " violations\n";
    }
    print_verdicts(rep);
    write_json(args.json_out, rep.json);
    return report_exit(rep);
}

Json fuzz_json(const FuzzReport& r, u32 p, u32 max_s, u32 max_b, u64 seed) {
    Json j;
    j["p"] = p;
    j["max_dim_target"] = max_s;
    j["max_dim_base"] = max_b;
    j["seed"] = seed;
    j["requested"] = r.requested;
    j["certified"] = r.certified;
    j["candidates"] = r.candidates;
    j["skipped_unbuildable"] = r.skipped_unbuildable;
    j["skipped_uncertified"] = r.skipped_uncertified;
    j["skipped_budget"] = r.skipped_budget;
    Json vs = Json::array();
    for (const FuzzViolation& v : r.violations) {
        Json vj;
        vj["seed"] = v.seed;
        vj["index"] = v.index;
        vj["message"] = v.message;
        vj["instance"] = v.instance_text;
        vs.push_back(vj);
    }
    j["violations"] = vs;
    j["version"] = report_version;
    return j;
}

int run_selftest() {
    int failures = 0;
    auto line = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };
    MutationResult m = mutation_self_test();
    line(m.caught, "mutation self-test: " + m.message);
    FuzzReport f = fuzz(2, 2, 2, 5, 0);
    line(f.certified == 5 && f.clean(), "mini fuzz run: 5 certified, no violations");
    ParseResult pr = parse_instance(*builtin_instance("split2(2)"));
    VerificationReport rep = run_suite(*pr.spec);
    line(!rep.verdict_failure && rep.budget_guard.empty(),
         "built-in split2(2): full suite verdicts pass");
    return failures == 0 ? exit_ok : exit_verdict;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* mb = std::getenv("DESCENT_FORGE_BUDGET_MB")) {
        try {
            MemoryGuard::set_limit_mb(std::stoull(mb));
        } catch (const std::exception&) {
            std::cerr << "error: DESCENT_FORGE_BUDGET_MB must be a number of megabytes\n";
            return exit_input;
        }
    }

    CLI::App app{"verification of subbimodule/coring-endomorphism correspondences "
                 "for finite-dimensional ring extensions"};
    app.require_subcommand(1);

    CommonArgs check_args, endos_args, inv_args, comatrix_args;
    std::string which = "all";

    CLI::App* check = app.add_subcommand("check", "run a verification suite and report verdicts");
    check_args.attach(check);
    check->add_option("--which", which, "suite: all, gamma, comatrix, prop31, comonadicity");

    CLI::App* endos = app.add_subcommand("endos", "list the canonical coring's endomorphisms");
    endos_args.attach(endos);

    CLI::App* invertibles =
        app.add_subcommand("invertibles", "list the invertible subbimodules and their group");
    inv_args.attach(invertibles);

    CLI::App* comatrix =
        app.add_subcommand("comatrix", "transport the monoid onto the comatrix coring");
    comatrix_args.attach(comatrix);

    CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "search random instances for violations");
    u32 fuzz_p = 2, fuzz_max_dim = 2, fuzz_max_dim_b = 0, fuzz_count = 100;
    u64 fuzz_seed = 0;
    std::string fuzz_json_out;
    fuzz_cmd->add_option("--p", fuzz_p, "field characteristic (prime)");
    fuzz_cmd->add_option("--max-dim", fuzz_max_dim, "bound on the target algebra dimension");
    fuzz_cmd->add_option("--max-dim-b", fuzz_max_dim_b,
                         "bound on the base algebra dimension (default: --max-dim)");
    fuzz_cmd->add_option("--count", fuzz_count, "number of certified instances to verify");
    fuzz_cmd->add_option("--seed", fuzz_seed, "master seed");
    fuzz_cmd->add_option("--json", fuzz_json_out, "write the JSON report here ('-' for stdout)");

    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in sanity checks");
    (void)selftest;

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(check_args, which);
        if (endos->parsed()) return run_endos(endos_args);
        if (invertibles->parsed()) return run_invertibles(inv_args);
        if (comatrix->parsed()) return run_comatrix(comatrix_args);
        if (fuzz_cmd->parsed()) {
            u32 max_b = fuzz_max_dim_b == 0 ? fuzz_max_dim : fuzz_max_dim_b;
            FuzzReport r = fuzz(fuzz_p, fuzz_max_dim, max_b, fuzz_count, fuzz_seed);
            std::cout << "certified " << r.certified << "/" << r.requested << " in "
                      << r.candidates << " candidates (" << r.skipped_unbuildable
                      << " unbuildable, " << r.skipped_uncertified << " uncertified, "
                      << r.skipped_budget << " guard-skipped); violations: "
                      << r.violations.size() << "\n";
            for (const FuzzViolation& v : r.violations)
                std::cout << "  seed " << v.seed << " index " << v.index << ": " << v.message
                          << "\n";
            write_json(fuzz_json_out, fuzz_json(r, fuzz_p, fuzz_max_dim, max_b, fuzz_seed));
            return r.clean() ? exit_ok : exit_verdict;
        }
        if (selftest->parsed()) return run_selftest();
    } catch (const BudgetError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return exit_guard;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant failed: " << e.what() << "\n";
        return exit_verdict;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
