#include "descent/two_descent.hpp"

#include <numeric>

#include <algorithm>
#include <set>

namespace descent {

TwoDescentPair make_two_descent_pair(const Int& a, const Int& c) {
    Int B = 3 * c * c + a;
    Int at = -4 * a - 15 * c * c;
    Int ct = -2 * c;
    Int Bt = 3 * ct * ct + at;
    CurveW E(Rat(a), Rat(-c * c * c - a * c));
    CurveW Et(Rat(at), Rat(-ct * ct * ct - at * ct));
    return TwoDescentPair{a, c, B, at, ct, Bt, E, Et};
}

Point isogeny2(const Rat& a, const Rat& c, const CurveW& target, const Point& p) {
    if (p.inf || p.x == c) return Point::infinity();
    Rat d = p.x - c;
    Rat xt = (p.x * p.x - p.x * c + a + 3 * c * c) / d;
    Rat yt = p.y * (p.x * p.x - 2 * p.x * c - a - 2 * c * c) / (d * d);
    return target.point(xt, yt);
}

Point isogeny2_dual(const Rat& at, const Rat& ct, const CurveW& target, const Point& p) {
    if (p.inf || p.x == ct) return Point::infinity();
    Rat d = p.x - ct;
    Rat x = (p.x * p.x - p.x * ct + at + 3 * ct * ct) / (4 * d);
    Rat y = p.y * (p.x * p.x - 2 * p.x * ct - at - 2 * ct * ct) / (8 * d * d);
    return target.point(x, y);
}

Point psi2(const TwoDescentPair& pair, const Point& p) {
    return isogeny2(Rat(pair.a), Rat(pair.c), pair.Et, p);
}

Point psi2_tilde(const TwoDescentPair& pair, const Point& p) {
    return isogeny2_dual(Rat(pair.at), Rat(pair.ct), pair.E, p);
}

Int square_class(const Rat& r) {
    if (r == 0) throw std::domain_error("square_class(0)");
    return squarefree_kernel(r.get_num() * r.get_den());
}

Int square_class_mul(const Int& u, const Int& v) { return squarefree_kernel(u * v); }

namespace {

// Square class of x - c for a point of the curve. The class divides B, so only
// the primes of 2B need factoring; the cofactor is then a perfect square. This
// avoids factoring the huge square part of high points. Falls back to the
// generic routine when the structure is absent.
Int square_class_hint(const Rat& r, const Int& B) {
    if (B == 0) return square_class(r);
    Int m = r.get_num() * r.get_den();
    Int cls = sgn(m);
    m = abs(m);
    for (auto& [p, e] : factorize(2 * B).primes) {
        unsigned long cnt = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (cnt % 2) cls *= p;
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) return cls;
    return square_class_mul(cls, squarefree_kernel(m));
}

} // namespace

Int alpha2(const Int& a, const Int& c, const Point& p) {
    if (p.inf) return 1;
    if (p.x == c) return squarefree_kernel(3 * c * c + a);
    return square_class_hint(p.x - Rat(c), 3 * c * c + a);
}

std::string status_str(ClassStatus s) {
    switch (s) {
        case ClassStatus::ProvedIn: return "in";
        case ClassStatus::ProvedOut: return "out";
        default: return "unknown";
    }
}

namespace {

std::vector<Int> squarefree_divisors(const Int& n) {
    Factorization f = factorize(abs(n));
    std::vector<Int> out{1};
    for (auto& [p, e] : f.primes) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> all_divisors(const Int& n) {
    Factorization f = factorize(abs(n));
    std::vector<Int> out{1};
    for (auto& [p, e] : f.primes) {
        size_t sz = out.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned long mod_ul(const Int& v, unsigned long m) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m);
    return r.get_ui();
}

// True if N^2 = d M^4 + 3c M^2 q^2 + (B/d) q^4 has no residue solutions mod p^k
// compatible with the coprimality structure of a primitive solution:
// gcd(M,q) = gcd(M,N) = gcd(N,q) = gcd(d,q) = 1, and no prime divides both M
// and B/d without dividing d.
bool no_solutions_mod(const Int& d, const Int& c, const Int& B, unsigned long p,
                      unsigned long m) {
    Int Bd = B / d;
    unsigned long dm = mod_ul(d, m), cm3 = mod_ul(3 * c, m), bdm = mod_ul(Bd, m);
    bool p_div_d = mod_ul(d, p) == 0;
    bool p_div_bd = mod_ul(Bd, p) == 0;
    std::vector<bool> is_sq(m, false);
    for (unsigned long n = 0; n < m; ++n) is_sq[(n * n) % m] = true;
    for (unsigned long M = 0; M < m; ++M) {
        bool pM = M % p == 0;
        for (unsigned long q = 0; q < m; ++q) {
            bool pq = q % p == 0;
            if (pM && pq) continue;
            if (p_div_d && pq) continue;
            if (pM && p_div_bd && !p_div_d) continue;
            unsigned long M2 = M * M % m, q2 = q * q % m;
            unsigned long rhs =
                (dm * (M2 * M2 % m) + cm3 * (M2 * q2 % m) + bdm * (q2 * q2 % m)) % m;
            bool p_div_N = rhs % p == 0;
            if (p_div_N && (pM || pq)) continue;
            if (is_sq[rhs]) return false;
        }
    }
    return true;
}

struct Engine {
    Int a, c, B;
    DescentBounds bounds;
    CurveW curve;

    Engine(const Int& a_, const Int& c_, const DescentBounds& b_)
        : a(a_), c(c_), B(3 * c_ * c_ + a_), bounds(b_),
          curve(Rat(a_), Rat(-c_ * c_ * c_ - a_ * c_)) {}

    std::optional<std::pair<Point, std::string>> search_witness(const Int& d) {
        for (long q = 1; q <= bounds.search_bound; ++q) {
            for (long M = 1; M <= bounds.search_bound; ++M) {
                if (std::gcd(M, q) != 1) continue;
                Int M2 = Int(M) * M, q2 = Int(q) * q;
                Int rhs = d * M2 * M2 + 3 * c * M2 * q2 + (B / d) * q2 * q2;
                if (rhs < 0 || !mpz_perfect_square_p(rhs.get_mpz_t())) continue;
                Int N;
                mpz_sqrt(N.get_mpz_t(), rhs.get_mpz_t());
                Rat x = Rat(c) + Rat(d * M2, q2);
                Rat y = Rat(d * M * N, q2 * q);
                x.canonicalize();
                y.canonicalize();
                if (!curve.contains(Point::affine(x, y))) continue;
                Point w = curve.point(x, y);
                if (alpha2(a, c, w) != d) continue;
                return std::make_pair(w, "quartic solution M=" + std::to_string(M) +
                                             " q=" + std::to_string(q) + " N=" + N.get_str());
            }
        }
        return std::nullopt;
    }

    // Disprove every divisor variant of the class; empty return means failure.
    std::optional<std::string> prove_out(const Int& cls) {
        std::vector<std::string> reasons;
        for (const Int& beta : all_divisors(B)) {
            if (squarefree_kernel(beta) != abs(cls)) continue;
            Int d = cls < 0 ? Int(-beta) : beta;
            std::optional<std::string> reason;
            if (d < 0 && 9 * c * c - 4 * B < 0)
                reason = "beta=" + d.get_str() + ": negative definite";
            if (!reason && d < 0 && B / d < 0 && c <= 0)
                reason = "beta=" + d.get_str() + ": all terms negative";
            if (!reason) {
                std::vector<unsigned long> ps;
                Factorization f = factorize(6 * B);
                for (auto& [p, e] : f.primes)
                    if (p <= bounds.local_bound) ps.push_back(p.get_ui());
                for (unsigned long p : ps) {
                    for (unsigned long m = p; (long)m <= bounds.local_bound; m *= p) {
                        if (no_solutions_mod(d, c, B, p, m)) {
                            reason = "beta=" + d.get_str() + ": no solutions mod " +
                                     std::to_string(m);
                            break;
                        }
                        if (m > (unsigned long)bounds.local_bound / p) break;
                    }
                    if (reason) break;
                }
            }
            if (!reason) return std::nullopt;
            reasons.push_back(*reason);
        }
        std::string all;
        for (size_t i = 0; i < reasons.size(); ++i) {
            if (i) all += "; ";
            all += reasons[i];
        }
        return all;
    }
};

} // namespace

std::vector<ClassReport> alpha2_image(const Int& a, const Int& c,
                                      const DescentBounds& bounds) {
    Engine eng(a, c, bounds);
    if (eng.B == 0) throw SingularCurveError();

    std::vector<ClassReport> reports;
    for (const Int& d : squarefree_divisors(eng.B)) {
        reports.push_back(ClassReport{d});
        reports.push_back(ClassReport{-d});
    }
    std::sort(reports.begin(), reports.end(),
              [](const ClassReport& x, const ClassReport& y) { return x.cls < y.cls; });
    auto find = [&](const Int& cls) -> ClassReport& {
        for (auto& r : reports)
            if (r.cls == cls) return r;
        throw std::logic_error("class outside divisor table");
    };

    for (const Point& t : torsion_subgroup(eng.curve)) {
        ClassReport& r = find(alpha2(a, c, t));
        if (r.status != ClassStatus::ProvedIn) {
            r.status = ClassStatus::ProvedIn;
            r.certificate = "torsion point " + point_str(t);
            r.witness = t;
        }
    }

    for (auto& r : reports) {
        if (r.status != ClassStatus::Unknown) continue;
        if (auto w = eng.search_witness(r.cls)) {
            r.status = ClassStatus::ProvedIn;
            r.witness = w->first;
            r.certificate = w->second + ", point " + point_str(w->first);
        }
    }
    for (auto& r : reports) {
        if (r.status != ClassStatus::Unknown) continue;
        if (auto reason = eng.prove_out(r.cls)) {
            r.status = ClassStatus::ProvedOut;
            r.certificate = *reason;
        }
    }

    // subgroup closure: in*in -> in, in*out -> out
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& ri : reports) {
            if (ri.status != ClassStatus::ProvedIn) continue;
            for (auto& rj : reports) {
                if (rj.status == ClassStatus::Unknown) continue;
                ClassReport& rk = find(square_class_mul(ri.cls, rj.cls));
                if (rk.status != ClassStatus::Unknown) continue;
                rk.status = rj.status;
                rk.certificate = "product of classes " + ri.cls.get_str() + " and " +
                                 rj.cls.get_str();
                changed = true;
            }
        }
    }
    return reports;
}

int kernel_index(const TwoDescentPair& pair) {
    return (pair.Bt > 0 && mpz_perfect_square_p(pair.Bt.get_mpz_t())) ? 1 : 2;
}

int two_torsion_order(const TwoDescentPair& pair) {
    return (pair.Bt > 0 && mpz_perfect_square_p(pair.Bt.get_mpz_t())) ? 4 : 2;
}

namespace {

int log2_exact(long v) {
    int r = 0;
    while (v > 1) {
        v >>= 1;
        ++r;
    }
    return r;
}

long pow2_floor(long v) {
    long r = 1;
    while (2 * r <= v) r *= 2;
    return r;
}

} // namespace

TwoDescentResult two_descent(const TwoDescentPair& pair, const DescentBounds& bounds) {
    TwoDescentResult res;
    res.e_classes = alpha2_image(pair.a, pair.c, bounds);
    res.et_classes = alpha2_image(pair.at, pair.ct, bounds);
    res.kernel_index = kernel_index(pair);
    res.two_torsion = two_torsion_order(pair);

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
    long denom = (long)res.kernel_index * res.two_torsion;
    long lo_num = inE * inEt;
    int r_lo = lo_num > denom ? log2_exact(lo_num) - log2_exact(denom) : 0;
    long hi_num = pow2_floor(upE) * pow2_floor(upEt);
    int r_hi = hi_num > denom ? log2_exact(hi_num) - log2_exact(denom) : 0;
    res.rank.lower = r_lo;
    res.rank.upper = std::max(r_lo, r_hi);
    res.rank.unknown_classes = (int)unknown;
    return res;
}

} // namespace descent
