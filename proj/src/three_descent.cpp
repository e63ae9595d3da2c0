#include "descent/three_descent.hpp"

#include <algorithm>

namespace descent {

CubeClass cube_class(const Rat& r) {
    if (r == 0) throw std::domain_error("cube_class(0)");
    Int n = abs(r.get_num() * r.get_den() * r.get_den());
    CubeFreeParts parts = cubefree_decompose(n);
    return CubeClass{parts.A, parts.B};
}

CubeClass cube_class_mul(const CubeClass& a, const CubeClass& b) {
    return cube_class(Rat(a.A * a.B * a.B * b.A * b.B * b.B));
}

CubeClass cube_class_inv(const CubeClass& a) { return CubeClass{a.B, a.A}; }

std::string cube_class_str(const CubeClass& c) {
    return "(" + c.A.get_str() + "," + c.B.get_str() + ")";
}

bool cube_class_less(const CubeClass& a, const CubeClass& b) {
    if (a.A != b.A) return a.A < b.A;
    return a.B < b.B;
}

ThreeDescentPair make_three_descent_pair(const Int& e) {
    if (e < 1) throw std::domain_error("three-descent requires e >= 1");
    CubeFreeParts parts = cubefree_decompose(e);
    if (parts.C != 1) throw std::domain_error("three-descent requires cube-free e");
    return ThreeDescentPair{e, CurveW(Rat(0), Rat(e * e)),
                            CurveW(Rat(0), Rat(-27 * e * e))};
}

Point isogeny3(const Rat& e, const CurveW& target, const Point& p) {
    if (p.inf || p.x == 0) return Point::infinity();
    Rat x3 = p.x * p.x * p.x;
    Rat xt = (x3 + 4 * e * e) / (p.x * p.x);
    Rat yt = p.y * (x3 - 8 * e * e) / x3;
    return target.point(xt, yt);
}

Point isogeny3_dual(const Rat& e, const CurveW& target, const Point& p) {
    if (p.inf || p.x == 0) return Point::infinity();
    Rat x3 = p.x * p.x * p.x;
    Rat x = (x3 - 108 * e * e) / (9 * p.x * p.x);
    Rat y = p.y * (x3 + 216 * e * e) / (27 * x3);
    return target.point(x, y);
}

Point psi3(const ThreeDescentPair& pair, const Point& p) {
    return isogeny3(Rat(pair.e), pair.Et, p);
}

Point psi3_tilde(const ThreeDescentPair& pair, const Point& p) {
    return isogeny3_dual(Rat(pair.e), pair.E, p);
}

namespace {

// Cube class of a value whose class divides 2e: only the primes of 6e need
// factoring, the cofactor is then a perfect cube. Avoids factoring the huge
// cube part of high points; falls back to the generic routine otherwise.
CubeClass cube_class_hint(const Rat& r, const Int& e) {
    Int m = abs(r.get_num() * r.get_den() * r.get_den());
    Int A = 1, B = 1;
    for (auto& [p, k] : factorize(6 * e).primes) {
        unsigned long cnt = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (cnt % 3 == 1) A *= p;
        if (cnt % 3 == 2) B *= p;
    }
    Int root;
    if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), 3)) return CubeClass{A, B};
    CubeFreeParts parts = cubefree_decompose(m); // primes disjoint from A, B
    return CubeClass{A * parts.A, B * parts.B};
}

} // namespace

CubeClass alpha3_minus(const Int& e, const Point& p) {
    if (p.inf) return CubeClass{1, 1};
    if (p.x == 0 && p.y == e) return cube_class(Rat(Int(1), 2 * e));
    return cube_class_hint(p.y - Rat(e), e);
}

CubeClass alpha3_plus(const Int& e, const Point& p) {
    if (p.inf) return CubeClass{1, 1};
    if (p.x == 0 && p.y == -Rat(e)) return cube_class(Rat(Int(-1), 2 * e));
    return cube_class_hint(p.y + Rat(e), e);
}

namespace {

// yt -+ 3 sqrt(-3) e as a ratio of ring elements; 3 sqrt(-3) = -3 + 6 eps.
EisCubeClass alpha3t(const Int& e, const Point& p, int sign) {
    if (p.inf) return EisCubeClass{EisInt(1, 0), EisInt(1, 0), EisInt(1, 0)};
    Int n = p.y.get_num(), d = p.y.get_den();
    EisInt num(n - sign * 3 * e * d, sign * 6 * e * d);
    EisInt den(d, Int(0));
    return eis_cube_class_hint(num * den * den, eis_primes_above(6 * e));
}

} // namespace

EisCubeClass alpha3t_minus(const Int& e, const Point& p) { return alpha3t(e, p, -1); }
EisCubeClass alpha3t_plus(const Int& e, const Point& p) { return alpha3t(e, p, 1); }

std::vector<CubeClass> cube_class_candidates(const Int& e) {
    Factorization f = factorize(2 * e);
    std::vector<CubeClass> out{CubeClass{1, 1}};
    for (auto& [p, k] : f.primes) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) {
            out.push_back(CubeClass{out[i].A * p, out[i].B});
            out.push_back(CubeClass{out[i].A, out[i].B * p});
        }
    }
    std::sort(out.begin(), out.end(), cube_class_less);
    return out;
}

std::vector<EisCubeClass> eis_class_candidates(const Int& e) {
    EisFactorization f = eis_factor(EisInt(-6 * e, 12 * e)); // 6 sqrt(-3) e
    std::vector<std::pair<EisInt, EisInt>> ab{{EisInt(1, 0), EisInt(1, 0)}};
    for (auto& [p, k] : f.primes) {
        size_t sz = ab.size();
        for (size_t i = 0; i < sz; ++i) {
            ab.push_back({ab[i].first * p, ab[i].second});
            ab.push_back({ab[i].first, ab[i].second * p});
        }
    }
    std::vector<EisCubeClass> out;
    for (const EisInt& eta : {EisInt(1, 0), EisInt(0, 1), EisInt(-1, 1)})
        for (auto& [A, B] : ab) out.push_back(EisCubeClass{eta, A, B});
    std::sort(out.begin(), out.end(), eis_cube_class_less);
    return out;
}

namespace {

// Local solvability of (AB^2) X^3 + (A^2 B) Y^3 + (2e) Z^3 = 0 over primitive
// residue triples mod m (m a power of p).
bool cubic_solvable_mod(const Int& A, const Int& B, const Int& e, unsigned long p,
                        unsigned long m) {
    auto red = [&](const Int& v) {
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m);
        return r.get_ui();
    };
    unsigned long c1 = red(A * B * B), c2 = red(A * A * B), c3 = red(2 * e);
    std::vector<unsigned long> cube(m);
    for (unsigned long t = 0; t < m; ++t) cube[t] = t * t % m * t % m;
    for (unsigned long X = 0; X < m; ++X)
        for (unsigned long Y = 0; Y < m; ++Y)
            for (unsigned long Z = 0; Z < m; ++Z) {
                if (X % p == 0 && Y % p == 0 && Z % p == 0) continue;
                if ((c1 * cube[X] + c2 * cube[Y] + c3 * cube[Z]) % m == 0) return true;
            }
    return false;
}

std::optional<std::string> cubic_prove_out(const Int& A, const Int& B, const Int& e,
                                           long local_bound) {
    std::vector<unsigned long> moduli;
    if (9 <= local_bound) moduli.push_back(9);
    else if (3 <= local_bound) moduli.push_back(3);
    Factorization f = factorize(2 * e);
    for (auto& [p, k] : f.primes) {
        if (p == 3) continue;
        unsigned long pl = p.get_ui();
        if ((long)(pl * pl) <= local_bound) moduli.push_back(pl * pl);
        else if ((long)pl <= local_bound) moduli.push_back(pl);
    }
    for (unsigned long m : moduli) {
        unsigned long p = m;
        for (unsigned long d = 2; d * d <= p; ++d)
            while (p % d == 0 && p > d) p /= d;
        if (!cubic_solvable_mod(A, B, e, p, m))
            return "no primitive solutions mod " + std::to_string(m);
    }
    return std::nullopt;
}

std::optional<std::pair<Point, std::string>> cubic_search(const CurveW& E, const Int& e,
                                                          const CubeClass& cls,
                                                          long bound) {
    const Int &A = cls.A, &B = cls.B;
    Int AB2 = A * B * B, A2B = A * A * B;
    for (long Z = 1; Z <= bound; ++Z) {
        Int q = -Int(Z), q3 = q * q * q;
        for (long X = -bound; X <= bound; ++X) {
            if (X == 0) continue;
            Int rhs = -(AB2 * Int(X) * X * X + 2 * e * Int(Z) * Z * Z);
            if (rhs % A2B != 0) continue;
            Int y3 = rhs / A2B;
            if (y3 == 0) continue;
            Int Y;
            if (!mpz_root(Y.get_mpz_t(), y3.get_mpz_t(), 3)) continue;
            Int s = AB2 * (-Int(X)) * (-Int(X)) * (-Int(X));
            Int m = -A * B * X * Y;
            Int n = s + e * q3;
            Rat x(m, q * q), y(n, q3);
            x.canonicalize();
            y.canonicalize();
            if (!E.contains(Point::affine(x, y))) continue;
            Point w = E.point(x, y);
            if (!(alpha3_minus(e, w) == cls)) continue;
            return std::make_pair(w, "cubic solution X=" + std::to_string(X) + " Y=" +
                                         Y.get_str() + " Z=" + std::to_string(Z) +
                                         ", point " + point_str(w));
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<CubeClassReport> alpha3_image(const ThreeDescentPair& pair,
                                          const ThreeDescentBounds& bounds) {
    std::vector<CubeClassReport> reports;
    for (const CubeClass& c : cube_class_candidates(pair.e))
        reports.push_back(CubeClassReport{c});
    auto find = [&](const CubeClass& c) -> CubeClassReport* {
        for (auto& r : reports)
            if (r.cls == c) return &r;
        return nullptr;
    };

    for (const Point& t : torsion_subgroup(pair.E)) {
        CubeClassReport* r = find(alpha3_minus(pair.e, t));
        if (!r) throw std::logic_error("torsion class outside candidate table");
        if (r->status != ClassStatus::ProvedIn) {
            r->status = ClassStatus::ProvedIn;
            r->certificate = "torsion point " + point_str(t);
            r->witness = t;
        }
    }
    for (auto& r : reports) {
        if (r.status != ClassStatus::Unknown) continue;
        if (auto w = cubic_search(pair.E, pair.e, r.cls, bounds.search_bound)) {
            r.status = ClassStatus::ProvedIn;
            r.witness = w->first;
            r.certificate = w->second;
        }
    }
    for (auto& r : reports) {
        if (r.status != ClassStatus::Unknown) continue;
        if (auto reason = cubic_prove_out(r.cls.A, r.cls.B, pair.e, bounds.local_bound)) {
            r.status = ClassStatus::ProvedOut;
            r.certificate = *reason;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& ri : reports) {
            if (ri.status != ClassStatus::ProvedIn) continue;
            for (auto& rj : reports) {
                if (rj.status == ClassStatus::Unknown) continue;
                CubeClassReport* rk = find(cube_class_mul(ri.cls, rj.cls));
                if (!rk || rk->status != ClassStatus::Unknown) continue;
                rk->status = rj.status;
                rk->certificate = "product of classes " + cube_class_str(ri.cls) +
                                  " and " + cube_class_str(rj.cls);
                changed = true;
            }
        }
    }
    return reports;
}

namespace {

// Rational value of a ratio of ring elements, if it is rational.
std::optional<Rat> as_rational(const EisInt& num, const EisInt& den) {
    if (den.is_zero()) return std::nullopt;
    EisInt t = num * eis_conj(den);
    if (t.v != 0) return std::nullopt;
    Rat r(t.u, eis_norm(den));
    r.canonicalize();
    return r;
}

std::optional<std::pair<Point, std::string>> eis_search(const CurveW& Et, const Int& e,
                                                        const EisCubeClass& cls,
                                                        long bound) {
    EisInt s1 = cls.eta * cls.A * cls.B * cls.B;
    EisInt s2 = eis_conj(cls.eta) * cls.A * cls.A * cls.B; // eta^-1 = conj(eta)
    EisInt s3(-6 * e, 12 * e);                             // 6 sqrt(-3) e
    EisInt three_rt(-3 * e, 6 * e);                        // 3 sqrt(-3) e
    std::vector<std::pair<EisInt, EisInt>> xcubes;         // (X, s1 X^3)
    for (long xu = -bound; xu <= bound; ++xu)
        for (long xv = -bound; xv <= bound; ++xv) {
            EisInt X(xu, xv);
            if (X.is_zero()) continue;
            xcubes.emplace_back(X, s1 * X * X * X);
        }
    for (long zu = 0; zu <= bound; ++zu) {
        for (long zv = (zu > 0 ? -bound : 1); zv <= bound; ++zv) {
            EisInt Z(zu, zv);
            if (Z.is_zero()) continue;
            EisInt Z3 = Z * Z * Z;
            EisInt s3Z3 = s3 * Z3;
            for (auto& [X, s1X3] : xcubes) {
                EisInt num = -(s1X3 + s3Z3);
                if (num.is_zero()) continue; // Y = 0 never yields rational y
                auto [quot, rem] = eis_divmod(num, s2);
                if (!rem.is_zero()) continue;
                auto Y = eis_cuberoot(quot);
                if (!Y || Y->is_zero()) continue;
                auto x = as_rational(-(cls.A * cls.B * X * *Y), Z * Z);
                if (!x) continue;
                auto y = as_rational(s1X3 + three_rt * Z3, Z3);
                if (!y) continue;
                if (!Et.contains(Point::affine(*x, *y))) continue;
                Point w = Et.point(*x, *y);
                if (!(alpha3t_minus(e, w) == cls)) continue;
                return std::make_pair(
                    w, "ring cubic solution X=" + eis_str(X) + " Y=" + eis_str(*Y) +
                           " Z=" + eis_str(Z) + ", point " + point_str(w));
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<EisClassReport> alpha3_tilde_image(const ThreeDescentPair& pair,
                                               const ThreeDescentBounds& bounds) {
    std::vector<EisClassReport> reports;
    for (const EisCubeClass& c : eis_class_candidates(pair.e))
        reports.push_back(EisClassReport{c});
    auto find = [&](const EisCubeClass& c) -> EisClassReport* {
        for (auto& r : reports)
            if (r.cls == c) return &r;
        return nullptr;
    };

    for (const Point& t : torsion_subgroup(pair.Et)) {
        EisClassReport* r = find(alpha3t_minus(pair.e, t));
        if (!r) throw std::logic_error("torsion class outside candidate table");
        if (r->status != ClassStatus::ProvedIn) {
            r->status = ClassStatus::ProvedIn;
            r->certificate = "torsion point " + point_str(t);
            r->witness = t;
        }
    }
    for (auto& r : reports) {
        if (r.status != ClassStatus::Unknown) continue;
        if (r.cls.is_identity()) {
            r.status = ClassStatus::ProvedIn;
            r.certificate = "point at infinity";
            r.witness = Point::infinity();
            continue;
        }
        if (auto w = eis_search(pair.Et, pair.e, r.cls, bounds.eis_search_bound)) {
            r.status = ClassStatus::ProvedIn;
            r.witness = w->first;
            r.certificate = w->second;
        }
    }
    // No local obstruction engine over the ring: remaining classes stay Unknown.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& ri : reports) {
            if (ri.status != ClassStatus::ProvedIn) continue;
            for (auto& rj : reports) {
                if (rj.status != ClassStatus::ProvedIn) continue;
                EisClassReport* rk = find(eis_cube_class_mul(ri.cls, rj.cls));
                if (!rk || rk->status != ClassStatus::Unknown) continue;
                rk->status = ClassStatus::ProvedIn;
                rk->certificate = "product of classes " + eis_cube_class_str(ri.cls) +
                                  " and " + eis_cube_class_str(rj.cls);
                changed = true;
            }
        }
    }
    return reports;
}

namespace {

int log3_floor(long v) {
    int r = 0;
    while (v >= 3) {
        v /= 3;
        ++r;
    }
    return r;
}

long pow3_floor(long v) {
    long r = 1;
    while (3 * r <= v) r *= 3;
    return r;
}

} // namespace

ThreeDescentResult three_descent(const ThreeDescentPair& pair,
                                 const ThreeDescentBounds& bounds) {
    ThreeDescentResult res;
    res.e_classes = alpha3_image(pair, bounds);
    res.et_classes = alpha3_tilde_image(pair, bounds);

    long inE = 0, inEt = 0, upE = 0, upEt = 0, unknown = 0;
    for (auto& r : res.e_classes) {
        if (r.status == ClassStatus::ProvedIn) ++inE;
        if (r.status != ClassStatus::ProvedOut) ++upE;
        if (r.status == ClassStatus::Unknown) ++unknown;
    }
    for (auto& r : res.et_classes) {
        if (r.status == ClassStatus::ProvedIn) ++inEt;
        if (r.status != ClassStatus::ProvedOut) ++upEt;
        if (r.status == ClassStatus::Unknown) ++unknown;
    }
    // 3^(r+1) = |image| * |image~|
    int r_lo = std::max(0, log3_floor(inE * inEt) - 1);
    int r_hi = std::max(r_lo, log3_floor(pow3_floor(upE) * pow3_floor(upEt)) - 1);
    res.rank.lower = r_lo;
    res.rank.upper = r_hi;
    res.rank.unknown_classes = (int)unknown;
    return res;
}

} // namespace descent
