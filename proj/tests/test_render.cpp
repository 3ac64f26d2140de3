#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

#include "gconst/ball.hpp"
#include "gconst/constants.hpp"
#include "gconst/context.hpp"
#include "gconst/render.hpp"

using gconst::PrecisionContext;
using gconst::Real;
namespace render = gconst::render;

TEST_CASE("plain values truncate toward zero at the requested places") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    CHECK(render::plain_value(gconst::enclose_decimal("1.23456789", c), 4) == "1.2345");
    CHECK(render::plain_value(gconst::enclose_decimal("-1.9999", c), 2) == "-1.99");
    CHECK(render::plain_value(gconst::enclose_decimal("0.00004", c), 4) == "0.0000");
}

TEST_CASE("exact integer balls render in closed-form N.0 shape") {
    CHECK(render::plain_value(Real::exact_si(6, 64), 10) == "6.0");
    CHECK(render::plain_value(Real::exact_si(-1, 64), 10) == "-1.0");
    CHECK(render::plain_value(Real::exact_si(0, 64), 10) == "0.0");
    CHECK(render::plain_value(Real::exact_si(1, 64), 4) == "1.0");
}

TEST_CASE("certification flips when the ball is inflated") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    Real v = gconst::enclose_decimal("0.6321205588285576", c);
    CHECK(render::value_certified(v, 10));
    v.add_error(gconst::enclose_decimal("0.001", c));
    CHECK(!render::value_certified(v, 10));
}

TEST_CASE("thousands separators decorate only the integer part") {
    CHECK(render::with_separators("1307654429611.2775941595") ==
          "1,307,654,429,611.2775941595");
    CHECK(render::with_separators("-5020.6842") == "-5,020.6842");
    CHECK(render::with_separators("123") == "123");
    CHECK(render::with_separators("123.456789") == "123.456789");
    CHECK(render::with_separators("1234") == "1,234");
}

TEST_CASE("magnitude bounds render compactly") {
    Real z = Real::exact_si(0, 64);
    CHECK(render::magnitude_bound(z) == "0");
    Real small = Real::exact_si(0, 64);
    small.add_error_2exp(-170);
    std::string s = render::magnitude_bound(small);
    CHECK(s.find("e-") != std::string::npos);
}

TEST_CASE("format names parse case-sensitively") {
    CHECK(render::parse_format("text") == render::Format::Text);
    CHECK(render::parse_format("csv") == render::Format::Csv);
    CHECK(render::parse_format("json") == render::Format::Json);
    CHECK_THROWS_AS(render::parse_format("yaml"), std::invalid_argument);
}

namespace {

// Split CSV/text lines for cell-level comparisons.
std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::string strip_commas(std::string s) {
    std::string out;
    for (char ch : s)
        if (ch != ',') out.push_back(ch);
    return out;
}

}  // namespace

TEST_CASE("the three table formats carry identical digit strings") {
    PrecisionContext base = PrecisionContext::for_digits(10);
    gconst::constants::TableResult t = gconst::constants::table(3, 10, base);
    render::PrecisionMeta meta{10, base.working_bits, t.escalations};

    std::string csv = render::table_output(t, render::Format::Csv, meta);
    CHECK(csv.find('\r') == std::string::npos);
    std::vector<std::string> csv_lines = lines_of(csv);
    REQUIRE(csv_lines.size() == 5);
    CHECK(csv_lines[0] == "n,eta,gamma,delta");
    CHECK(csv_lines[1] == "0,0.6321205588,1.0,-1.0");

    std::string json_text = render::table_output(t, render::Format::Json, meta);
    nlohmann::json doc = nlohmann::json::parse(json_text);
    CHECK(doc.at("command") == "table");
    CHECK(doc.at("precision").at("target_digits") == 10);
    CHECK(doc.at("precision").at("working_bits") == base.working_bits);
    CHECK(doc.at("verdict") == "pass");
    REQUIRE(doc.at("rows").size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        const auto& row = doc.at("rows").at(i);
        std::string expect = std::to_string(i) + "," + row.at("eta").get<std::string>() + "," +
                             row.at("gamma").get<std::string>() + "," +
                             row.at("delta").get<std::string>();
        CHECK(csv_lines[i + 1] == expect);
        CHECK(row.at("certified").at("eta").get<bool>());
    }

    // Text format: same digits once the separator decoration is stripped.
    std::string text = render::table_output(t, render::Format::Text, meta);
    for (size_t i = 0; i < 4; ++i) {
        const auto& row = doc.at("rows").at(i);
        std::string eta = row.at("eta").get<std::string>();
        CHECK(strip_commas(text).find(eta) != std::string::npos);
    }
}

TEST_CASE("value envelopes quote awkward names and parse back") {
    render::PrecisionMeta meta{10, 64, 0};
    std::vector<render::ValueRow> rows;
    render::ValueRow r;
    r.name = "name,with\"quote";
    r.n = 2;
    r.value = "1.5";
    r.certified = true;
    r.route = "test route";
    rows.push_back(r);

    std::string csv = render::value_output("value", rows, render::Format::Csv, meta);
    CHECK(csv.find("\"name,with\"\"quote\"") != std::string::npos);

    std::string json_text = render::value_output("value", rows, render::Format::Json, meta);
    nlohmann::json doc = nlohmann::json::parse(json_text);
    CHECK(doc.at("command") == "value");
    CHECK(doc.at("rows").at(0).at("value") == "1.5");
    CHECK(doc.at("rows").at(0).at("n") == 2);
}
