#include "gconst/render.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gconst::render {

using nlohmann::ordered_json;

Format parse_format(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("format must be one of text, csv, json");
}

std::string plain_value(const Real& v, int digits) {
    if (v.is_exact()) {
        RationalCoeff q = v.mid_exact();
        if (q.get_den() == 1) return q.get_num().get_str() + ".0";
    }
    return to_decimal_trunc(v, digits).text;
}

bool value_certified(const Real& v, int digits) { return to_decimal_trunc(v, digits).certified; }

std::string with_separators(const std::string& plain) {
    std::string out;
    std::size_t i = 0;
    if (i < plain.size() && (plain[i] == '-' || plain[i] == '+')) out += plain[i++];
    std::size_t start = i;
    while (i < plain.size() && std::isdigit(static_cast<unsigned char>(plain[i]))) ++i;
    const std::size_t len = i - start;
    for (std::size_t k = 0; k < len; ++k) {
        if (k > 0 && (len - k) % 3 == 0) out += ',';
        out += plain[start + k];
    }
    out += plain.substr(i);
    return out;
}

std::string magnitude_bound(const Real& v) {
    mpfr_t m;
    mpfr_init2(m, 64);
    v.mag_upper(m);
    std::string out = "0";
    if (!mpfr_zero_p(m)) {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.1Re", m);
        if (s != nullptr) {
            out = s;
            mpfr_free_str(s);
        }
    }
    mpfr_clear(m);
    return out;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ordered_json precision_json(const PrecisionMeta& meta) {
    return ordered_json{{"target_digits", meta.target_digits},
                        {"working_bits", meta.working_bits},
                        {"escalations", meta.escalations}};
}

std::string envelope_dump(ordered_json j) { return j.dump(2) + "\n"; }

std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", s);
    return buf;
}

}  // namespace

std::string table_output(const constants::TableResult& t, Format f, const PrecisionMeta& meta) {
    struct Cells {
        unsigned n;
        std::string eta, gamma, delta, residual;
        const constants::ConstantRecord* rec;
    };
    std::vector<Cells> cells;
    cells.reserve(t.rows.size());
    for (const auto& rec : t.rows)
        cells.push_back({rec.n, plain_value(rec.eta, t.digits), plain_value(rec.gamma, t.digits),
                         plain_value(rec.delta, t.digits), magnitude_bound(rec.hardy), &rec});

    if (f == Format::Csv) {
        std::ostringstream os;
        os << "n,eta,gamma,delta\n";
        for (const auto& c : cells) os << c.n << ',' << c.eta << ',' << c.gamma << ',' << c.delta << '\n';
        return os.str();
    }

    if (f == Format::Json) {
        ordered_json rows = ordered_json::array();
        for (const auto& c : cells)
            rows.push_back(ordered_json{{"n", c.n},
                                        {"eta", c.eta},
                                        {"gamma", c.gamma},
                                        {"delta", c.delta},
                                        {"certified",
                                         ordered_json{{"eta", value_certified(c.rec->eta, t.digits)},
                                                      {"gamma", value_certified(c.rec->gamma, t.digits)},
                                                      {"delta", value_certified(c.rec->delta, t.digits)}}},
                                        {"residual", c.residual}});
        return envelope_dump(ordered_json{{"command", "table"},
                                          {"precision", precision_json(meta)},
                                          {"rows", rows},
                                          {"verdict", t.all_certified ? "pass" : "fail"}});
    }

    // Text: aligned columns, thousands separators, certification footer.
    std::vector<std::array<std::string, 4>> disp;
    disp.reserve(cells.size());
    std::array<std::string, 4> head = {"n", "eta^(n)", "gamma^(n)", "delta^(n)"};
    std::array<std::size_t, 4> width = {head[0].size(), head[1].size(), head[2].size(),
                                        head[3].size()};
    for (const auto& c : cells) {
        std::array<std::string, 4> row = {std::to_string(c.n), with_separators(c.eta),
                                          with_separators(c.gamma), with_separators(c.delta)};
        if (!c.rec->certified) row[1] += "  [uncertified row]";
        for (int i = 0; i < 4; ++i) width[i] = std::max(width[i], row[i].size());
        disp.push_back(std::move(row));
    }
    std::ostringstream os;
    os << pad(head[0], width[0]) << "  " << pad(head[1], width[1]) << "  " << pad(head[2], width[2])
       << "  " << head[3] << '\n';
    for (const auto& row : disp)
        os << pad(row[0], width[0]) << "  " << pad(row[1], width[1]) << "  "
           << pad(row[2], width[2]) << "  " << row[3] << '\n';
    os << (t.all_certified ? "all " : "NOT all ") << t.rows.size() << " rows certified at "
       << t.digits << " decimal places";
    if (t.escalations > 0) os << " (precision escalations: " << t.escalations << ")";
    os << '\n';
    return os.str();
}

std::string value_output(const std::string& command, const std::vector<ValueRow>& rows, Format f,
                         const PrecisionMeta& meta) {
    bool all_certified = true;
    for (const auto& r : rows) all_certified = all_certified && r.certified;

    if (f == Format::Csv) {
        std::ostringstream os;
        os << "name,n,value,certified\n";
        for (const auto& r : rows) {
            os << csv_quote(r.name) << ',';
            if (r.n) os << *r.n;
            os << ',' << r.value << ',' << (r.certified ? "true" : "false") << '\n';
        }
        return os.str();
    }

    if (f == Format::Json) {
        ordered_json jrows = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json jr{{"name", r.name}};
            if (r.n)
                jr["n"] = *r.n;
            else
                jr["n"] = nullptr;
            jr["value"] = r.value;
            jr["certified"] = r.certified;
            if (!r.route.empty()) jr["route"] = r.route;
            if (!r.residual.empty()) jr["residual"] = r.residual;
            jrows.push_back(std::move(jr));
        }
        return envelope_dump(ordered_json{{"command", command},
                                          {"precision", precision_json(meta)},
                                          {"rows", jrows},
                                          {"verdict", all_certified ? "pass" : "fail"}});
    }

    std::ostringstream os;
    for (const auto& r : rows) {
        os << r.name << " = " << with_separators(r.value) << "  ["
           << (r.certified ? "certified" : "NOT certified");
        if (!r.route.empty()) os << "; " << r.route;
        if (!r.residual.empty()) os << "; cross-route gap <= " << r.residual;
        os << "]\n";
    }
    return os.str();
}

std::string suite_output(const verify::SuiteReport& rep, Format f, const PrecisionMeta& meta) {
    const char* level = rep.level == verify::SuiteLevel::Quick ? "quick" : "full";
    std::size_t passed = 0;
    for (const auto& c : rep.checks) passed += c.pass ? 1 : 0;

    if (f == Format::Csv) {
        std::ostringstream os;
        os << "check,pass,seconds,detail\n";
        for (const auto& c : rep.checks)
            os << csv_quote(c.name) << ',' << (c.pass ? "true" : "false") << ','
               << format_seconds(c.seconds) << ',' << csv_quote(c.detail) << '\n';
        return os.str();
    }

    if (f == Format::Json) {
        ordered_json rows = ordered_json::array();
        for (const auto& c : rep.checks)
            rows.push_back(ordered_json{{"name", c.name},
                                        {"pass", c.pass},
                                        {"seconds", c.seconds},
                                        {"detail", c.detail}});
        return envelope_dump(ordered_json{{"command", std::string("verify ") + level},
                                          {"precision", precision_json(meta)},
                                          {"rows", rows},
                                          {"verdict", rep.pass ? "pass" : "fail"}});
    }

    std::ostringstream os;
    std::size_t name_w = 0;
    for (const auto& c : rep.checks) name_w = std::max(name_w, c.name.size());
    for (const auto& c : rep.checks)
        os << (c.pass ? "[PASS] " : "[FAIL] ") << pad(c.name, name_w) << "  "
           << pad(format_seconds(c.seconds) + " s", 9) << "  " << c.detail << '\n';
    os << "verdict: " << (rep.pass ? "PASS" : "FAIL") << " (" << passed << "/" << rep.checks.size()
       << " checks passed, level " << level << ", " << format_seconds(rep.seconds) << " s)\n";
    return os.str();
}

std::string asym_output(const std::string& kind,
                        const std::vector<asymptotics::AsymptoticRow>& rows, int digits, Format f,
                        const PrecisionMeta& meta) {
    const bool laplace = kind == "delta-laplace";
    const bool eta_kind = kind == "eta-bracket";

    struct Line {
        unsigned n;
        std::string a, b, c;  // low/high/value or estimate/actual/rel-err
        bool flag;            // containment / certification
    };
    std::vector<Line> lines;
    lines.reserve(rows.size());
    bool pass = true;
    for (const auto& r : rows) {
        Line ln;
        ln.n = r.n;
        if (laplace) {
            Real actual = abs_ball(r.delta);
            ln.a = plain_value(r.laplace, digits);
            ln.b = plain_value(actual, digits);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4g", r.laplace_rel_err);
            ln.c = buf;
            ln.flag = value_certified(actual, digits);
        } else {
            const asymptotics::Bracket& br = eta_kind ? r.eta_bounds : r.gamma_bounds;
            const Real& val = eta_kind ? r.eta : r.gamma;
            ln.a = plain_value(br.low, digits);
            ln.b = plain_value(br.high, digits);
            ln.c = plain_value(val, digits);
            ln.flag = eta_kind ? r.eta_inside : r.gamma_inside;
        }
        pass = pass && ln.flag;
        lines.push_back(std::move(ln));
    }

    const char* ha = laplace ? "estimate" : "low";
    const char* hb = laplace ? "certified" : "high";
    const char* hc = laplace ? "rel_err" : "value";
    const char* hflag = laplace ? "certified_flag" : "inside";

    if (f == Format::Csv) {
        std::ostringstream os;
        os << "n," << ha << ',' << hb << ',' << hc << ',' << hflag << '\n';
        for (const auto& ln : lines)
            os << ln.n << ',' << ln.a << ',' << ln.b << ',' << ln.c << ','
               << (ln.flag ? "true" : "false") << '\n';
        return os.str();
    }

    if (f == Format::Json) {
        ordered_json jrows = ordered_json::array();
        for (const auto& ln : lines)
            jrows.push_back(ordered_json{
                {"n", ln.n}, {ha, ln.a}, {hb, ln.b}, {hc, ln.c}, {hflag, ln.flag}});
        return envelope_dump(ordered_json{{"command", std::string("asym ") + kind},
                                          {"precision", precision_json(meta)},
                                          {"rows", jrows},
                                          {"verdict", pass ? "pass" : "fail"}});
    }

    std::ostringstream os;
    std::array<std::string, 5> head = {"n", ha, hb, hc, hflag};
    std::array<std::size_t, 5> width{};
    for (int i = 0; i < 5; ++i) width[i] = head[i].size();
    std::vector<std::array<std::string, 5>> disp;
    for (const auto& ln : lines) {
        std::array<std::string, 5> row = {std::to_string(ln.n), with_separators(ln.a),
                                          with_separators(ln.b),
                                          laplace ? ln.c : with_separators(ln.c),
                                          ln.flag ? "yes" : "NO"};
        for (int i = 0; i < 5; ++i) width[i] = std::max(width[i], row[i].size());
        disp.push_back(std::move(row));
    }
    for (int i = 0; i < 5; ++i) os << pad(head[i], width[i]) << (i == 4 ? "\n" : "  ");
    for (const auto& row : disp)
        for (int i = 0; i < 5; ++i) os << pad(row[i], width[i]) << (i == 4 ? "\n" : "  ");
    os << "verdict: " << (pass ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace gconst::render
