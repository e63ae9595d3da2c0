#include "descent/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace descent {

EisInt operator+(const EisInt& a, const EisInt& b) { return {a.u + b.u, a.v + b.v}; }
EisInt operator-(const EisInt& a, const EisInt& b) { return {a.u - b.u, a.v - b.v}; }
EisInt operator-(const EisInt& a) { return {-a.u, -a.v}; }

// (u1 + v1 e)(u2 + v2 e) with e^2 = e - 1.
EisInt operator*(const EisInt& a, const EisInt& b) {
    return {a.u * b.u - a.v * b.v, a.u * b.v + a.v * b.u + a.v * b.v};
}

EisInt eis_conj(const EisInt& a) { return {a.u + a.v, -a.v}; }

Int eis_norm(const EisInt& a) { return a.u * a.u + a.u * a.v + a.v * a.v; }

std::string eis_str(const EisInt& a) {
    if (a.v == 0) return a.u.get_str();
    std::string vs;
    if (a.v == 1) vs = "eps";
    else if (a.v == -1) vs = "-eps";
    else vs = a.v.get_str() + "*eps";
    if (a.u == 0) return vs;
    if (a.v > 0) return a.u.get_str() + "+" + vs;
    return a.u.get_str() + vs;
}

bool eis_less(const EisInt& a, const EisInt& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

const std::array<EisInt, 6>& eis_units() {
    static const std::array<EisInt, 6> units = {
        EisInt(1, 0),  EisInt(0, 1),  EisInt(-1, 1),
        EisInt(-1, 0), EisInt(0, -1), EisInt(1, -1)};
    return units;
}

bool eis_is_unit(const EisInt& a) { return eis_norm(a) == 1; }

namespace {

Int round_div(const Int& num, const Int& den) {
    // nearest integer to num/den, den > 0
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), Int(2 * num + den).get_mpz_t(), Int(2 * den).get_mpz_t());
    return q;
}

} // namespace

std::pair<EisInt, EisInt> eis_divmod(const EisInt& a, const EisInt& b) {
    if (b.is_zero()) throw std::domain_error("eis_divmod by zero");
    EisInt num = a * eis_conj(b);
    Int n = eis_norm(b);
    EisInt q(round_div(num.u, n), round_div(num.v, n));
    EisInt r = a - q * b;
    return {q, r};
}

bool eis_divides(const EisInt& d, const EisInt& a) {
    return eis_divmod(a, d).second.is_zero();
}

EisInt eis_divexact(const EisInt& a, const EisInt& d) {
    auto [q, r] = eis_divmod(a, d);
    if (!r.is_zero()) throw std::domain_error("eis_divexact: not divisible");
    return q;
}

EisInt eis_gcd(EisInt a, EisInt b) {
    while (!b.is_zero()) {
        auto [q, r] = eis_divmod(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return eis_canonical(a).first;
}

std::pair<EisInt, EisInt> eis_canonical(const EisInt& a) {
    if (a.is_zero()) return {a, EisInt(1, 0)};
    for (const EisInt& inv : eis_units()) {
        EisInt cand = a * inv;
        if (cand.u > 0 && cand.v >= 0) {
            // a = unit * cand with unit = inv^-1 = conj(inv) for units
            EisInt unit = eis_conj(inv);
            return {cand, unit};
        }
    }
    throw std::logic_error("eis_canonical: no associate in sector");
}

EisInt EisFactorization::value() const {
    EisInt v = unit;
    for (auto& [p, e] : primes)
        for (unsigned i = 0; i < e; ++i) v = v * p;
    return v;
}

namespace {

// A canonical prime above rational prime p.
// p = 3: ramified, (1,1). p = 2 mod 3: inert, (p,0). p = 1 mod 3: split.
EisInt prime_above(const Int& p) {
    if (p == 3) return EisInt(1, 1);
    if (p % 3 == 2) return EisInt(p, 0);
    // find u^2 + uv + v^2 = p
    for (Int u = 1; u * u <= p; ++u) {
        Int disc = 4 * p - 3 * u * u;
        if (disc < 0) break;
        Int s;
        if (!mpz_perfect_square_p(disc.get_mpz_t())) continue;
        mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
        if ((s - u) % 2 != 0) continue;
        Int v = (s - u) / 2;
        EisInt pi(u, v);
        if (eis_norm(pi) == p) return eis_canonical(pi).first;
    }
    throw std::logic_error("prime_above: no representation found");
}

} // namespace

EisFactorization eis_factor(const EisInt& a) {
    if (a.is_zero()) throw std::domain_error("eis_factor(0)");
    EisFactorization f;
    Factorization nf = factorize(eis_norm(a));
    EisInt rest = a;
    for (auto& [p, e] : nf.primes) {
        EisInt pi = prime_above(p);
        std::vector<EisInt> divisors{pi};
        if (p % 3 == 1) {
            EisInt bar = eis_canonical(eis_conj(pi)).first;
            if (!(bar == pi)) divisors.push_back(bar);
        }
        for (const EisInt& d : divisors) {
            unsigned cnt = 0;
            while (eis_divides(d, rest)) {
                rest = eis_divexact(rest, d);
                ++cnt;
            }
            if (cnt) f.primes.emplace_back(d, cnt);
        }
    }
    if (!eis_is_unit(rest)) throw std::logic_error("eis_factor: leftover not a unit");
    f.unit = rest;
    std::sort(f.primes.begin(), f.primes.end(), [](auto& x, auto& y) {
        Int nx = eis_norm(x.first), ny = eis_norm(y.first);
        if (nx != ny) return nx < ny;
        return eis_less(x.first, y.first);
    });
    return f;
}

std::optional<EisInt> eis_cuberoot(const EisInt& a) {
    if (a.is_zero()) return EisInt(0, 0);
    // cheap rejection: the norm of a cube is a cube
    Int n = eis_norm(a), nr;
    if (!mpz_root(nr.get_mpz_t(), n.get_mpz_t(), 3)) return std::nullopt;
    // numeric principal root, then test the three root candidates and neighbors
    long double ur = a.u.get_d(), vr = a.v.get_d();
    std::complex<long double> eps(0.5L, std::sqrt(3.0L) / 2.0L);
    std::complex<long double> z = ur + vr * eps;
    std::complex<long double> w = std::pow(z, 1.0L / 3.0L);
    std::complex<long double> om(-0.5L, std::sqrt(3.0L) / 2.0L);
    for (int k = 0; k < 3; ++k) {
        long double y = w.imag(), x = w.real();
        long double vf = y / (std::sqrt(3.0L) / 2.0L);
        long double uf = x - vf / 2.0L;
        Int u0((long)std::llround((double)uf)), v0((long)std::llround((double)vf));
        for (long du = -1; du <= 1; ++du)
            for (long dv = -1; dv <= 1; ++dv) {
                EisInt r(u0 + du, v0 + dv);
                if (r * r * r == a) return r;
            }
        w *= om;
    }
    // exact fallback through factorization
    EisFactorization f = eis_factor(a);
    EisInt root(1, 0);
    for (auto& [p, e] : f.primes) {
        if (e % 3 != 0) return std::nullopt;
        for (unsigned i = 0; i < e / 3; ++i) root = root * p;
    }
    // unit part: need unit = s^3 for a unit s; cubes of units are 1 and -1
    for (const EisInt& s : eis_units()) {
        if (s * s * s == f.unit) {
            root = root * s;
            if (root * root * root == a) return root;
        }
    }
    return std::nullopt;
}

namespace {

// Reduce a unit to its class representative in {1, eps, omega} modulo {1, -1}.
EisInt eta_rep(const EisInt& unit) {
    for (const EisInt& s : {EisInt(1, 0), EisInt(-1, 0)}) {
        EisInt c = unit * s;
        if (c == EisInt(1, 0) || c == EisInt(0, 1) || c == EisInt(-1, 1)) return c;
    }
    throw std::logic_error("eta_rep: not a unit");
}

} // namespace

bool EisCubeClass::is_identity() const {
    return eta == EisInt(1, 0) && A == EisInt(1, 0) && B == EisInt(1, 0);
}

EisCubeClass eis_cube_class(const EisInt& a) {
    EisFactorization f = eis_factor(a);
    EisCubeClass c{eta_rep(f.unit), EisInt(1, 0), EisInt(1, 0)};
    for (auto& [p, e] : f.primes) {
        if (e % 3 == 1) c.A = c.A * p;
        if (e % 3 == 2) c.B = c.B * p;
    }
    return c;
}

EisCubeClass eis_cube_class_ratio(const EisInt& num, const EisInt& den) {
    return eis_cube_class(num * den * den);
}

std::vector<EisInt> eis_primes_above(const Int& n) {
    std::vector<EisInt> out;
    for (auto& [p, e] : factorize(abs(n)).primes) {
        EisInt pi = prime_above(p);
        out.push_back(pi);
        if (p % 3 == 1) {
            EisInt bar = eis_canonical(eis_conj(pi)).first;
            if (!(bar == pi)) out.push_back(bar);
        }
    }
    std::sort(out.begin(), out.end(), [](const EisInt& x, const EisInt& y) {
        Int nx = eis_norm(x), ny = eis_norm(y);
        if (nx != ny) return nx < ny;
        return eis_less(x, y);
    });
    return out;
}

EisCubeClass eis_cube_class_hint(const EisInt& a, const std::vector<EisInt>& primes) {
    EisInt rest = a, A(1, 0), B(1, 0);
    bool saw_lambda = false;
    for (const EisInt& p : primes) {
        if (p == EisInt(1, 1)) saw_lambda = true;
        unsigned cnt = 0;
        while (eis_divides(p, rest)) {
            rest = eis_divexact(rest, p);
            ++cnt;
        }
        if (cnt % 3 == 1) A = A * p;
        if (cnt % 3 == 2) B = B * p;
    }
    Int n = eis_norm(rest);
    if (n < Int("1000000000000000000")) {
        // small enough to resolve exactly
        EisCubeClass c = eis_cube_class(rest);
        return EisCubeClass{c.eta, A * c.A, B * c.B};
    }
    // rest should be unit * cube; a cube coprime to the prime above 3 is
    // +-1 mod 9, so the unit class is read off from rest mod 9
    Int root;
    if (saw_lambda && mpz_root(root.get_mpz_t(), n.get_mpz_t(), 3)) {
        Int ru, rv;
        mpz_fdiv_r_ui(ru.get_mpz_t(), rest.u.get_mpz_t(), 9);
        mpz_fdiv_r_ui(rv.get_mpz_t(), rest.v.get_mpz_t(), 9);
        for (const EisInt& eta : {EisInt(1, 0), EisInt(0, 1), EisInt(-1, 1)})
            for (long s : {1L, -1L}) {
                Int tu, tv;
                mpz_fdiv_r_ui(tu.get_mpz_t(), Int(s * eta.u).get_mpz_t(), 9);
                mpz_fdiv_r_ui(tv.get_mpz_t(), Int(s * eta.v).get_mpz_t(), 9);
                if (ru == tu && rv == tv) return EisCubeClass{eta, A, B};
            }
    }
    EisCubeClass c = eis_cube_class(rest);
    return EisCubeClass{c.eta, A * c.A, B * c.B};
}

EisCubeClass eis_cube_class_mul(const EisCubeClass& a, const EisCubeClass& b) {
    EisInt prod = a.eta * a.A * a.B * a.B * b.eta * b.A * b.B * b.B;
    return eis_cube_class(prod);
}

EisCubeClass eis_cube_class_inv(const EisCubeClass& a) {
    EisInt v = a.eta * a.A * a.B * a.B;
    return eis_cube_class(v * v);
}

std::string eis_cube_class_str(const EisCubeClass& c) {
    return "[" + eis_str(c.eta) + "; " + eis_str(c.A) + "; " + eis_str(c.B) + "]";
}

bool eis_cube_class_less(const EisCubeClass& a, const EisCubeClass& b) {
    if (!(a.eta == b.eta)) return eis_less(a.eta, b.eta);
    if (!(a.A == b.A)) return eis_less(a.A, b.A);
    return eis_less(a.B, b.B);
}

} // namespace descent
