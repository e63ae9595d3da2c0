#include "descent/cuboid.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace descent {

CoeffTable CoeffTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
    CoeffTable t;
    std::vector<Term>* cur = nullptr;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string first;
        ss >> first;
        if (first == "section") {
            std::string name;
            ss >> name;
            if (name == "F") cur = &t.f_;
            else if (name == "P1") cur = &t.p1_;
            else if (name == "P2") cur = &t.p2_;
            else throw std::runtime_error("unknown section: " + name);
            continue;
        }
        if (!cur) throw std::runtime_error("term before any section");
        Term term;
        term.bexp = (unsigned)std::stoul(first);
        std::string cexp, coeff;
        ss >> cexp >> coeff;
        term.cexp = (unsigned)std::stoul(cexp);
        term.coeff = Int(coeff);
        cur->push_back(term);
    }
    if (t.f_.empty() || t.p1_.empty() || t.p2_.empty())
        throw std::runtime_error("coefficient file missing sections");
    return t;
}

const CoeffTable& CoeffTable::standard() {
    static CoeffTable t = load(DESCENT_DEFAULT_COEFF_FILE);
    return t;
}

const std::vector<CoeffTable::Term>& CoeffTable::terms(const std::string& section) const {
    if (section == "F") return f_;
    if (section == "P1") return p1_;
    if (section == "P2") return p2_;
    throw std::runtime_error("unknown section: " + section);
}

Rat CoeffTable::eval_sum_horner(const std::vector<Term>& terms, const Rat& b,
                                const Rat& c) const {
    unsigned bmax = 0, cmax = 0;
    for (const Term& t : terms) {
        bmax = std::max(bmax, t.bexp);
        cmax = std::max(cmax, t.cexp);
    }
    // grid[i][j] = coefficient of b^i c^j
    std::vector<std::vector<Int>> grid(bmax + 1, std::vector<Int>(cmax + 1, Int(0)));
    for (const Term& t : terms) grid[t.bexp][t.cexp] += t.coeff;
    Rat total = 0;
    for (long i = bmax; i >= 0; --i) {
        Rat row = 0;
        for (long j = cmax; j >= 0; --j) row = row * c + Rat(grid[i][j]);
        total = total * b + row;
    }
    return total;
}

Rat CoeffTable::eval_sum_termwise(const std::vector<Term>& terms, const Rat& b,
                                  const Rat& c) const {
    auto pow_rat = [](const Rat& base, unsigned e) {
        Rat r = 1;
        for (unsigned i = 0; i < e; ++i) r *= base;
        return r;
    };
    Rat total = 0;
    for (const Term& t : terms) total += Rat(t.coeff) * pow_rat(b, t.bexp) * pow_rat(c, t.cexp);
    return total;
}

Rat CoeffTable::eval_F(const Rat& b, const Rat& c) const { return eval_sum_horner(f_, b, c); }

Rat CoeffTable::eval_P(Family which, const Rat& b, const Rat& c) const {
    Rat F = eval_F(b, c);
    if (F == 0) throw DegenerateParameters("F(b,c) = 0");
    if (which == Family::P1) return eval_sum_horner(p1_, b, c) / (2 * F);
    return b * eval_sum_horner(p2_, b, c) / (2 * F);
}

Rat CoeffTable::eval_P_termwise(Family which, const Rat& b, const Rat& c) const {
    Rat F = eval_sum_termwise(f_, b, c);
    if (F == 0) throw DegenerateParameters("F(b,c) = 0");
    if (which == Family::P1) return eval_sum_termwise(p1_, b, c) / (2 * F);
    return b * eval_sum_termwise(p2_, b, c) / (2 * F);
}

FamilyFraction family_fraction(const CoeffTable& table, Family which, const Rat& b,
                               const Rat& c) {
    Rat P = table.eval_P(which, b, c);
    if (P == 0) throw DegenerateParameters("P(b,c) = 0: no associated curve");
    return FamilyFraction{P.get_num(), P.get_den()};
}

CurveW family_curve(const FamilyFraction& f) {
    Int R2 = f.R * f.R;
    Int k = 16 * R2 * R2 * f.N * f.N;
    return CurveW(Rat(0), Rat(k));
}

bool roundtrip_ok(const FamilyFraction& f, const Point& p) {
    if (p.inf) return false;
    Rat w = p.y / Rat(4 * f.R * f.R * f.N);
    Rat alpha = p.x / Rat(2 * f.R * f.N);
    return 2 * f.R * (w * w - 1) == f.N * alpha * alpha * alpha;
}

CurveClass classify_curve(const FamilyFraction& f) {
    Int k = 4 * f.R * f.R * f.N;
    if (auto t = perfect_root(k, 3); t && *t % 2 == 0) return CubeCase{*t / 2};
    CubeFreeParts parts = cubefree_decompose(abs(k));
    return GeneralCase{parts.A * parts.B * parts.B, parts.C};
}

std::vector<Point> cube_case_points(const Int& M) {
    Int M2 = M * M, M3 = M2 * M;
    Int k = 64 * M3 * M3;
    CurveW curve(Rat(0), Rat(k));
    std::vector<Point> pts{Point::infinity(),
                           curve.point(Rat(8 * M2), Rat(24 * abs(M3))),
                           curve.point(Rat(8 * M2), Rat(-24 * abs(M3))),
                           curve.point(Rat(0), Rat(8 * abs(M3))),
                           curve.point(Rat(0), Rat(-8 * abs(M3))),
                           curve.point(Rat(-4 * M2), Rat(0))};
    std::sort(pts.begin(), pts.end(), point_less);
    return pts;
}

} // namespace descent
