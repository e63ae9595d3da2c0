#include "descent/report.hpp"

#include <sstream>

namespace descent {

Json point_json(const Point& p) {
    if (p.inf) return Json{{"inf", true}};
    return Json{{"x", rational_str(p.x)}, {"y", rational_str(p.y)}};
}

Point point_from_json(const Json& j) {
    if (j.contains("inf") && j["inf"].get<bool>()) return Point::infinity();
    return Point::affine(parse_rational(j["x"].get<std::string>()),
                         parse_rational(j["y"].get<std::string>()));
}

namespace {

Json torsion_json(const CurveW& curve) {
    Json arr = Json::array();
    for (const Point& p : torsion_subgroup(curve)) {
        Json entry = point_json(p);
        entry["order"] = point_order(curve, p);
        arr.push_back(entry);
    }
    return arr;
}

Json curve_json(const CurveW& curve) {
    return Json{{"a", rational_str(curve.a())}, {"b", rational_str(curve.b())}};
}

Json class_report_json(const ClassReport& r) {
    Json j{{"class", r.cls.get_str()}, {"status", status_str(r.status)}};
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    if (r.witness) j["witness"] = point_json(*r.witness);
    return j;
}

Json cube_class_report_json(const CubeClassReport& r) {
    Json j{{"A", r.cls.A.get_str()},
           {"B", r.cls.B.get_str()},
           {"status", status_str(r.status)}};
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    if (r.witness) j["witness"] = point_json(*r.witness);
    return j;
}

Json eis_class_report_json(const EisClassReport& r) {
    Json j{{"eta", eis_str(r.cls.eta)},
           {"A", eis_str(r.cls.A)},
           {"B", eis_str(r.cls.B)},
           {"status", status_str(r.status)}};
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    if (r.witness) j["witness"] = point_json(*r.witness);
    return j;
}

Json rank_json(const RankBounds& r) {
    return Json{{"lower", r.lower}, {"upper", r.upper}, {"unknown_classes", r.unknown_classes}};
}

Json two_descent_json(const TwoDescentPair& pair, const TwoDescentResult& res) {
    Json e_arr = Json::array(), et_arr = Json::array();
    for (auto& r : res.e_classes) e_arr.push_back(class_report_json(r));
    for (auto& r : res.et_classes) et_arr.push_back(class_report_json(r));
    return Json{{"a", pair.a.get_str()},
                {"c", pair.c.get_str()},
                {"B", pair.B.get_str()},
                {"associated", Json{{"a", pair.at.get_str()},
                                    {"c", pair.ct.get_str()},
                                    {"B", pair.Bt.get_str()}}},
                {"kernel_index", res.kernel_index},
                {"two_torsion_order", res.two_torsion},
                {"e_classes", e_arr},
                {"et_classes", et_arr}};
}

Json three_descent_json(const ThreeDescentPair& pair, const ThreeDescentResult& res) {
    Json e_arr = Json::array(), et_arr = Json::array();
    for (auto& r : res.e_classes) e_arr.push_back(cube_class_report_json(r));
    for (auto& r : res.et_classes) et_arr.push_back(eis_class_report_json(r));
    return Json{{"e", pair.e.get_str()}, {"e_classes", e_arr}, {"et_classes", et_arr}};
}

Json bounds2_json(const DescentBounds& b) {
    return Json{{"search_bound", b.search_bound}, {"local_bound", b.local_bound}};
}

Json bounds3_json(const ThreeDescentBounds& b) {
    return Json{{"search_bound", b.search_bound},
                {"local_bound", b.local_bound},
                {"eis_search_bound", b.eis_search_bound}};
}

} // namespace

Json report_curve_two(const Int& a, const Int& c, const DescentBounds& bounds) {
    TwoDescentPair pair = make_two_descent_pair(a, c);
    TwoDescentResult res = two_descent(pair, bounds);
    return Json{{"tool", "descent-kit"},
                {"mode", "curve-two"},
                {"status", "ok"},
                {"input", Json{{"a", a.get_str()}, {"c", c.get_str()}}},
                {"curve", curve_json(pair.E)},
                {"associated_curve", curve_json(pair.Et)},
                {"method", "two-descent"},
                {"torsion", torsion_json(pair.E)},
                {"two_descent", two_descent_json(pair, res)},
                {"rank", rank_json(res.rank)},
                {"params", bounds2_json(bounds)}};
}

Json report_curve_three(const Int& e, const ThreeDescentBounds& bounds) {
    ThreeDescentPair pair = make_three_descent_pair(e);
    ThreeDescentResult res = three_descent(pair, bounds);
    return Json{{"tool", "descent-kit"},
                {"mode", "curve-three"},
                {"status", "ok"},
                {"input", Json{{"e", e.get_str()}}},
                {"curve", curve_json(pair.E)},
                {"associated_curve", curve_json(pair.Et)},
                {"method", "three-descent"},
                {"torsion", torsion_json(pair.E)},
                {"three_descent", three_descent_json(pair, res)},
                {"rank", rank_json(res.rank)},
                {"params", bounds3_json(bounds)}};
}

Json report_curve_torsion(const Int& a, const Int& b) {
    CurveW curve((Rat(a)), Rat(b));
    return Json{{"tool", "descent-kit"},
                {"mode", "curve-torsion"},
                {"status", "ok"},
                {"input", Json{{"a", a.get_str()}, {"b", b.get_str()}}},
                {"curve", curve_json(curve)},
                {"method", "torsion"},
                {"torsion", torsion_json(curve)}};
}

Json report_cuboid(const CoeffTable& table, Family family, const Rat& b, const Rat& c,
                   const DescentBounds& b2, const ThreeDescentBounds& b3) {
    Json input{{"family", family == Family::P1 ? "p1" : "p2"},
               {"b", rational_str(b)},
               {"c", rational_str(c)}};
    FamilyFraction frac = family_fraction(table, family, b, c);
    CurveW curve = family_curve(frac);
    Json report{{"tool", "descent-kit"},
                {"mode", "cuboid"},
                {"status", "ok"},
                {"input", input},
                {"coefficient",
                 Json{{"F", rational_str(table.eval_F(b, c))},
                      {"P", rational_str(Rat(frac.N) / Rat(frac.R))},
                      {"N", frac.N.get_str()},
                      {"R", frac.R.get_str()}}},
                {"curve", curve_json(curve)}};
    CurveClass cls = classify_curve(frac);
    if (std::holds_alternative<CubeCase>(cls)) {
        const Int& M = std::get<CubeCase>(cls).M;
        report["classification"] = Json{{"kind", "cube-case"}, {"M", M.get_str()}};
        report["method"] = "cube-case";
        Json pts = Json::array();
        CurveW cc(Rat(0), Rat(64 * M * M * M * M * M * M));
        for (const Point& p : cube_case_points(M)) {
            Json entry = point_json(p);
            entry["order"] = point_order(cc, p);
            pts.push_back(entry);
        }
        report["torsion"] = pts;
        report["rank"] = Json{{"lower", 0}, {"upper", 0}, {"unknown_classes", 0}};
    } else {
        const GeneralCase& g = std::get<GeneralCase>(cls);
        report["classification"] =
            Json{{"kind", "general"}, {"e", g.e.get_str()}, {"u", g.u.get_str()}};
        report["method"] = "three-descent";
        ThreeDescentPair pair = make_three_descent_pair(g.e);
        ThreeDescentResult res = three_descent(pair, b3);
        report["descent_curve"] = curve_json(pair.E);
        report["torsion"] = torsion_json(pair.E);
        report["three_descent"] = three_descent_json(pair, res);
        report["rank"] = rank_json(res.rank);
    }
    report["params"] = Json{{"two_descent", bounds2_json(b2)}, {"three_descent", bounds3_json(b3)}};
    return report;
}

Json error_report(const std::string& mode, const Json& input, const std::string& status,
                  const std::string& message) {
    return Json{{"tool", "descent-kit"},
                {"mode", mode},
                {"status", status},
                {"input", input},
                {"error", message}};
}

bool report_has_unknown(const Json& report) {
    if (report.is_object() && report.contains("status") && report["status"] == "unknown")
        return true;
    for (auto& el : report)
        if ((el.is_object() || el.is_array()) && report_has_unknown(el)) return true;
    return false;
}

std::string csv_header() {
    return "mode,status,family,b,c,a,c2,e,N,R,method,M,u,rank_lower,rank_upper,"
           "unknown_classes,torsion_order,error";
}

namespace {

std::string csv_escape(std::string s) {
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string get_str(const Json& j, std::initializer_list<const char*> path) {
    const Json* cur = &j;
    for (const char* key : path) {
        if (!cur->is_object() || !cur->contains(key)) return "";
        cur = &(*cur)[key];
    }
    if (cur->is_string()) return cur->get<std::string>();
    if (cur->is_number_integer()) return std::to_string(cur->get<long long>());
    return cur->dump();
}

} // namespace

std::string csv_row(const Json& r) {
    std::vector<std::string> cols;
    cols.push_back(get_str(r, {"mode"}));
    cols.push_back(get_str(r, {"status"}));
    cols.push_back(get_str(r, {"input", "family"}));
    cols.push_back(get_str(r, {"input", "b"}));
    cols.push_back(get_str(r, {"input", "c"}));
    cols.push_back(get_str(r, {"input", "a"}));
    cols.push_back(get_str(r, {"two_descent", "c"}));
    std::string e = get_str(r, {"input", "e"});
    if (e.empty()) e = get_str(r, {"classification", "e"});
    cols.push_back(e);
    cols.push_back(get_str(r, {"coefficient", "N"}));
    cols.push_back(get_str(r, {"coefficient", "R"}));
    cols.push_back(get_str(r, {"method"}));
    cols.push_back(get_str(r, {"classification", "M"}));
    cols.push_back(get_str(r, {"classification", "u"}));
    cols.push_back(get_str(r, {"rank", "lower"}));
    cols.push_back(get_str(r, {"rank", "upper"}));
    cols.push_back(get_str(r, {"rank", "unknown_classes"}));
    cols.push_back(r.contains("torsion") ? std::to_string(r["torsion"].size()) : "");
    cols.push_back(get_str(r, {"error"}));
    std::string out;
    for (size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(cols[i]);
    }
    return out;
}

} // namespace descent
