#include "descent_forge/fp.hpp"

#include <atomic>

namespace descent {

bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u32 d = 2; u64(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(u32 p) : p_(p) {
    if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    if (p >= (1u << 20)) throw Error("modulus too large for desk-scale instances");
}

u32 PrimeField::pow(u32 a, u64 e) const {
    u32 r = 1 % p_;
    u32 b = a % p_;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

u32 PrimeField::inv(u32 a) const {
    a %= p_;
    if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

namespace {
std::atomic<u64> g_limit_bytes{0};  // 0 = unlimited
}

void MemoryGuard::set_limit_mb(u64 mb) { g_limit_bytes.store(mb << 20); }

u64 MemoryGuard::limit_bytes() { return g_limit_bytes.load(); }

void MemoryGuard::check(u64 bytes, const char* site) {
    u64 limit = g_limit_bytes.load();
    if (limit != 0 && bytes > limit)
        throw BudgetError(std::string("memory guard tripped at ") + site, bytes, limit);
}

}  // namespace descent
