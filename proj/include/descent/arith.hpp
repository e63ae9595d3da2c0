#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace descent {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when the factoring budget runs out before a full factorization is found.
struct FactorizationIncomplete : std::runtime_error {
    explicit FactorizationIncomplete(const Int& n)
        : std::runtime_error("factorization incomplete: " + n.get_str()) {}
};

struct Factorization {
    int sign = 1;                                 // -1, 0 or +1
    std::vector<std::pair<Int, unsigned>> primes; // ascending, exponents >= 1
    Int value() const;
};

bool is_prime(const Int& n);

// Full factorization of n (n != 0). Throws FactorizationIncomplete if the
// rho budget is exhausted on some cofactor.
Factorization factorize(const Int& n);

// n = s * t^2 with s square-free; returns (s, t). Sign of n goes into s.
std::pair<Int, Int> squarefree_part(const Int& n);
Int squarefree_kernel(const Int& n); // just s

// n = A * B^2 * C^3 with A, B square-free, coprime, positive; n > 0.
struct CubeFreeParts {
    Int A, B, C;
};
CubeFreeParts cubefree_decompose(const Int& n);

// Exact k-th root if n is a perfect k-th power.
std::optional<Int> perfect_root(const Int& n, unsigned k);

// b = b' * u^6 with b' sixth-power-free; returns (b', u), u > 0.
std::pair<Int, Int> sixth_power_free_reduce(const Int& b);

Rat parse_rational(const std::string& s); // "p/q" or "p"
std::string rational_str(const Rat& r);   // "p" or "p/q", canonical

// Optional file-backed factorization cache shared across threads.
// Line format: n<TAB>sign<TAB>p:e,p:e,...
class FactorCache;
void set_factor_cache(FactorCache* cache); // nullptr to disable
FactorCache* factor_cache();

class FactorCache {
public:
    explicit FactorCache(const std::string& path);
    ~FactorCache();
    std::optional<Factorization> lookup(const Int& n);
    void store(const Int& n, const Factorization& f);

private:
    struct Impl;
    Impl* impl_;
};

} // namespace descent
