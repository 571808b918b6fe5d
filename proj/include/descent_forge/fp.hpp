// Prime-field arithmetic and the error taxonomy shared by the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace descent {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Resource-guard violation (enumeration counts or memory). The CLI maps this
// to exit code 3.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, u64 required_, u64 allowed_)
        : Error(what + " (required " + std::to_string(required_) + ", budget " +
                std::to_string(allowed_) + ")"),
          required(required_),
          allowed(allowed_) {}
    u64 required;
    u64 allowed;
};

// A mathematically guaranteed identity failed to hold, i.e. a bug in this
// library rather than in the input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("internal: " + what) {}
};

bool is_prime(u32 n);

// F_p for a prime p small enough that products of reduced elements fit in u64.
class PrimeField {
public:
    explicit PrimeField(u32 p);

    u32 p() const { return p_; }
    u32 reduce(u64 x) const { return static_cast<u32>(x % p_); }
    u32 reduce_signed(i64 x) const {
        i64 r = x % static_cast<i64>(p_);
        return static_cast<u32>(r < 0 ? r + p_ : r);
    }
    u32 add(u32 a, u32 b) const { return reduce(u64(a) + b); }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
    u32 mul(u32 a, u32 b) const { return reduce(u64(a) * b); }
    u32 pow(u32 a, u64 e) const;
    u32 inv(u32 a) const;

    bool operator==(const PrimeField&) const = default;

private:
    u32 p_;
};

// Global soft memory guard, set from DESCENT_FORGE_BUDGET_MB. Large
// allocations (tensor quotients, enumeration tables) call check() before
// committing.
class MemoryGuard {
public:
    static void set_limit_mb(u64 mb);
    static u64 limit_bytes();
    static void check(u64 bytes, const char* site);
};

}  // namespace descent
