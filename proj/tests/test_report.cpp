#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "descent/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace descent;

namespace {

// Minimal validator for the subset of JSON Schema the report schema uses:
// type, enum, required, properties, items, $ref into #/definitions.
bool validate(const Json& schema, const Json& value, const Json& root, std::string& err) {
    if (schema.contains("$ref")) {
        std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        REQUIRE(ref.rfind(prefix, 0) == 0);
        return validate(root["definitions"][ref.substr(prefix.size())], value, root, err);
    }
    if (schema.contains("type")) {
        std::string t = schema["type"].get<std::string>();
        bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                  (t == "string" && value.is_string()) || (t == "integer" && value.is_number_integer()) ||
                  (t == "boolean" && value.is_boolean());
        if (!ok) {
            err = "type mismatch, expected " + t + " got " + value.dump();
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (auto& e : schema["enum"])
            if (e == value) hit = true;
        if (!hit) {
            err = "enum mismatch: " + value.dump();
            return false;
        }
    }
    if (schema.contains("required"))
        for (auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                err = "missing required key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties"))
        for (auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !validate(sub, value[key], root, err)) return false;
    if (schema.contains("items") && value.is_array())
        for (auto& el : value)
            if (!validate(schema["items"], el, root, err)) return false;
    return true;
}

Json load_schema() {
    std::ifstream in(SCHEMA_PATH);
    REQUIRE(in.good());
    return Json::parse(in);
}

void check_schema(const Json& report) {
    Json schema = load_schema();
    std::string err;
    bool ok = validate(schema, report, schema, err);
    INFO(err);
    CHECK(ok);
}

} // namespace

TEST_CASE("point serialization round-trips") {
    Point p = Point::affine(Rat(3, 4), Rat(-7, 8));
    CHECK(point_from_json(point_json(p)) == p);
    CHECK(point_from_json(point_json(Point::infinity())) == Point::infinity());
}

TEST_CASE("two-descent report shape and determinism") {
    DescentBounds bounds;
    Json r1 = report_curve_two(Int(0), Int(-1), bounds);
    Json r2 = report_curve_two(Int(0), Int(-1), bounds);
    CHECK(r1.dump(2) == r2.dump(2)); // byte identical
    check_schema(r1);
    CHECK(r1["mode"] == "curve-two");
    CHECK(r1["status"] == "ok");
    CHECK(r1["curve"]["b"] == "1");
    CHECK(r1["rank"]["lower"] == 0);
    CHECK(r1["rank"]["upper"] == 0);
    CHECK(r1["torsion"].size() == 6);
    CHECK_FALSE(report_has_unknown(r1));
    // parse back from text
    Json r3 = Json::parse(r1.dump());
    CHECK(r3["two_descent"]["kernel_index"] == 2);
}

TEST_CASE("three-descent report shape") {
    ThreeDescentBounds bounds;
    Json r = report_curve_three(Int(2), bounds);
    check_schema(r);
    CHECK(r["mode"] == "curve-three");
    CHECK(r["curve"]["b"] == "4");
    CHECK(r["associated_curve"]["b"] == "-108");
    CHECK(r["torsion"].size() == 3);
    Json again = report_curve_three(Int(2), bounds);
    CHECK(r.dump() == again.dump());
}

TEST_CASE("torsion report shape") {
    Json r = report_curve_torsion(Int(0), Int(1));
    check_schema(r);
    CHECK(r["torsion"].size() == 6);
    CHECK_FALSE(report_has_unknown(r));
}

TEST_CASE("cuboid reports") {
    const CoeffTable& t = CoeffTable::standard();
    DescentBounds b2;
    ThreeDescentBounds b3;
    SUBCASE("general case") {
        Json r = report_cuboid(t, Family::P1, Rat(1), Rat(2), b2, b3);
        check_schema(r);
        CHECK(r["mode"] == "cuboid");
        CHECK(r["classification"].contains("kind"));
        if (r["classification"]["kind"] == "general") {
            CHECK(r.contains("three_descent"));
            CHECK(r.contains("descent_curve"));
        }
    }
    SUBCASE("error report for degenerate input") {
        Json input{{"family", "p1"}, {"b", "0"}, {"c", "0"}};
        Json r = error_report("cuboid", input, "degenerate", "all terms vanish");
        check_schema(r);
        CHECK(r["status"] == "degenerate");
        CHECK(r["error"] == "all terms vanish");
    }
}

TEST_CASE("unknown detection descends into nested structures") {
    Json r{{"status", "ok"},
           {"nested", Json{{"list", Json::array({Json{{"status", "in"}},
                                                 Json{{"status", "unknown"}}})}}}};
    CHECK(report_has_unknown(r));
    r["nested"]["list"][1]["status"] = "out";
    CHECK_FALSE(report_has_unknown(r));
}

TEST_CASE("csv rendering") {
    std::string header = csv_header();
    size_t cols = std::count(header.begin(), header.end(), ',') + 1;
    CHECK(cols == 18);

    DescentBounds b2;
    ThreeDescentBounds b3;
    Json r = report_curve_two(Int(0), Int(-1), b2);
    std::string row = csv_row(r);
    // no quoted fields expected here, so commas count fields directly
    CHECK(std::count(row.begin(), row.end(), ',') + 1 == (long)cols);
    CHECK(row.substr(0, 10) == "curve-two,");

    Json e = error_report("cuboid", Json{{"b", "0"}, {"c", "0"}}, "degenerate",
                          "message with, comma");
    std::string erow = csv_row(e);
    CHECK(erow.find("\"message with, comma\"") != std::string::npos);
}
