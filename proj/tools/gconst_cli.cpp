#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "gconst/asymptotics.hpp"
#include "gconst/ball.hpp"
#include "gconst/constants.hpp"
#include "gconst/context.hpp"
#include "gconst/efunction.hpp"
#include "gconst/render.hpp"
#include "gconst/specfun.hpp"
#include "gconst/verify.hpp"

namespace {

using gconst::PrecisionContext;
using gconst::Real;

// GCONST_DIGITS seeds the --digits default; an unparsable or nonpositive value
// falls back to 10 so a stray environment never breaks scripted runs.
int default_digits() {
    const char* env = std::getenv("GCONST_DIGITS");
    if (env == nullptr || *env == '\0') return 10;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || v < 1 || v > 100000) return 10;
    return static_cast<int>(v);
}

struct CommonOpts {
    int digits = default_digits();
    std::string format = "text";
    long precision_bits = 0;
    bool seed_check = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seed_check) {
    cmd->add_option("-d,--digits", o.digits, "certified decimal places for printed values")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--precision-bits", o.precision_bits,
                    "working-precision override in bits (must clear the digit target's floor)")
        ->check(CLI::PositiveNumber);
    if (with_seed_check)
        cmd->add_flag("--seed-check", o.seed_check,
                      "cross-validate the result against an independent route");
}

PrecisionContext base_context(const CommonOpts& o) {
    try {
        return o.precision_bits > 0 ? PrecisionContext::with_bits(
                                          o.digits, static_cast<mpfr_prec_t>(o.precision_bits))
                                    : PrecisionContext::for_digits(o.digits);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(std::string("--precision-bits: ") + e.what());
    }
}

// Digit target for opt-in cross-route checks: deep enough to catch seed-level
// corruption, shallow enough that the redundant route stays cheap.
PrecisionContext cross_check_context(int digits) {
    return PrecisionContext::for_digits(std::clamp(digits, 8, 20));
}

gconst::render::Format fmt(const CommonOpts& o) { return gconst::render::parse_format(o.format); }

int run_table(unsigned n_max, const CommonOpts& o) {
    PrecisionContext base = base_context(o);
    gconst::constants::TableResult t = gconst::constants::table(n_max, o.digits, base);
    gconst::render::PrecisionMeta meta{o.digits, static_cast<long>(base.working_bits),
                                       t.escalations};
    std::cout << gconst::render::table_output(t, fmt(o), meta);
    bool ok = t.all_certified;
    if (!ok) std::cerr << "table: at least one row failed to certify\n";
    if (o.seed_check) {
        auto rep = gconst::constants::cross_validate(0, n_max, cross_check_context(o.digits));
        if (!rep.pass) {
            std::cerr << "seed-check: route cross-validation failed\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}

std::string route_note(const std::string& which) {
    if (which == "eta") return "alternating factorial series";
    if (which == "gamma") return "cumulant recurrence over zeta values";
    if (which == "delta") return "tanh-sinh log-moment quadrature";
    return "-e Ei(1) exponential-integral closed form";
}

Real alternate_route(const std::string& which, unsigned n, int digits) {
    namespace cn = gconst::constants;
    namespace sf = gconst::specfun;
    PrecisionContext c = cross_check_context(digits);
    if (which == "eta") return cn::eta_quadrature(n, c.boosted(cn::magnitude_digits(n)));
    if (which == "gamma") {
        PrecisionContext b = c.boosted(cn::magnitude_digits(n) + 8);
        Real eta = cn::eta_value(n, b);
        Real delta = cn::delta_value(n, c.boosted(8));
        return gconst::sub(eta, gconst::div(delta, sf::e_ball(b)));
    }
    if (which == "delta")
        return cn::delta_value(n, c.boosted(8), cn::DeltaRoute::Identity);
    // delta-star: fold the t = -1 series value back through the identity
    // F_1(-1) = -(gamma + delta*/e).
    PrecisionContext b = c.boosted(8);
    Real f1 = gconst::efun::eval_F(1, Real::exact_si(-1, b.working_bits), b);
    return gconst::neg(gconst::mul(sf::e_ball(b), gconst::add(sf::euler_gamma(b), f1)));
}

int run_value(const std::string& which, unsigned n, const CommonOpts& o) {
    namespace cn = gconst::constants;
    PrecisionContext base = base_context(o);
    const bool star = which == "delta-star";
    const int mag = star ? 0 : cn::magnitude_digits(n);

    // The eta series is a relative-precision route, so the factorial magnitude
    // must be paid for up front; the gamma recurrence and delta quadrature
    // compensate internally and only need absolute guard digits.
    PrecisionContext effective = base;
    auto compute = [&](int escalations) -> Real {
        PrecisionContext c = base;
        for (int i = 0; i < escalations; ++i) c = c.escalated();
        if (which == "eta") {
            effective = c.boosted(mag + 8);
            return cn::eta_value(n, effective);
        }
        if (which == "gamma") {
            effective = c.boosted(8);
            return cn::gamma_recurrence(n, effective)[n];
        }
        if (which == "delta") {
            effective = c.boosted(8);
            return cn::delta_value(n, effective);
        }
        effective = c.boosted(8);
        return cn::delta_star(effective);
    };

    Real v = compute(0);
    int esc = 0;
    while (!gconst::render::value_certified(v, o.digits) && esc < 3 && o.precision_bits == 0) {
        ++esc;
        v = compute(esc);
    }
    const bool certified = gconst::render::value_certified(v, o.digits);

    gconst::render::ValueRow row;
    row.name = which;
    if (!star) row.n = n;
    row.value = gconst::render::plain_value(v, o.digits);
    row.certified = certified;
    row.route = route_note(which);

    bool ok = certified;
    if (!certified)
        std::cerr << "value: " << which << " not certified at " << o.digits
                  << " decimal places within the escalation budget\n";
    if (o.seed_check) {
        Real alt = alternate_route(which, n, o.digits);
        if (!v.intersects(alt)) {
            std::cerr << "seed-check: independent route disagrees for " << which << "\n";
            ok = false;
        }
        row.residual = gconst::render::magnitude_bound(gconst::sub(v, alt));
    }

    gconst::render::PrecisionMeta meta{o.digits, static_cast<long>(effective.working_bits), esc};
    std::cout << gconst::render::value_output("value", {row}, fmt(o), meta);
    return ok ? 0 : 1;
}

int run_verify(const std::string& level, const CommonOpts& o) {
    PrecisionContext base = base_context(o);
    gconst::verify::SuiteReport rep = gconst::verify::run_suite(
        level == "full" ? gconst::verify::SuiteLevel::Full : gconst::verify::SuiteLevel::Quick,
        base);
    gconst::render::PrecisionMeta meta{o.digits, static_cast<long>(base.working_bits), 0};
    std::cout << gconst::render::suite_output(rep, fmt(o), meta);
    if (!rep.pass)
        for (const auto& c : rep.checks)
            if (!c.pass) {
                std::cerr << "verify: first failing check: " << c.name << "\n";
                break;
            }
    return rep.pass ? 0 : 1;
}

int run_asym(const std::string& kind, const std::vector<unsigned>& ns, const CommonOpts& o) {
    namespace as = gconst::asymptotics;
    namespace cn = gconst::constants;
    const bool laplace = kind == "delta-laplace";
    const unsigned floor_n = laplace ? 3u : 1u;
    for (unsigned n : ns)
        if (n < floor_n)
            throw CLI::ValidationError(kind + " requires every n >= " + std::to_string(floor_n));

    PrecisionContext base = base_context(o);
    std::vector<as::AsymptoticRow> rows;
    bool ok = true;
    if (laplace) {
        // The size-estimate report needs no brackets, so skip their quadratures
        // and certify only |delta| alongside the estimate.
        for (unsigned n : ns) {
            as::AsymptoticRow row;
            row.n = n;
            row.delta = cn::delta_value(n, base.boosted(8));
            row.laplace = as::laplace_delta_estimate(n, base.boosted(8));
            Real ratio = gconst::div(row.laplace, gconst::abs_ball(row.delta));
            row.laplace_rel_err = std::fabs(ratio.mid_double() - 1.0);
            ok = ok && gconst::render::value_certified(gconst::abs_ball(row.delta), o.digits);
            rows.push_back(std::move(row));
        }
    } else {
        unsigned top = *std::max_element(ns.begin(), ns.end());
        rows = as::asymptotic_report(ns, base.boosted(cn::magnitude_digits(top) + 8));
        for (const auto& r : rows) ok = ok && (kind == "eta-bracket" ? r.eta_inside : r.gamma_inside);
    }
    gconst::render::PrecisionMeta meta{o.digits, static_cast<long>(base.working_bits), 0};
    std::cout << gconst::render::asym_output(kind, rows, o.digits, fmt(o), meta);
    if (!ok) std::cerr << "asym: report contains an unverified row\n";
    return ok ? 0 : 1;
}

int run_efun(unsigned n, const std::string& t_text, const CommonOpts& o) {
    namespace cn = gconst::constants;
    PrecisionContext base = base_context(o);
    Real probe;
    try {
        probe = gconst::enclose_decimal(t_text, base);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(std::string("--t: ") + e.what());
    }
    const double scale = std::fabs(probe.mid_double());
    if (!(scale <= 90000.0))
        throw CLI::ValidationError("--t: |t| exceeds the certified summation range");

    // Guard digits: factorial prefactor, plus ~0.4343 digits per unit of |t|
    // (growth of the largest term for t < 0, cancellation depth for t > 0).
    const int extra = cn::magnitude_digits(n) + static_cast<int>(0.4343 * scale) + 8;

    PrecisionContext effective = base;
    auto compute = [&](int escalations) -> Real {
        PrecisionContext c = base;
        for (int i = 0; i < escalations; ++i) c = c.escalated();
        effective = c.boosted(extra);
        Real t = gconst::enclose_decimal(t_text, effective);
        return gconst::efun::eval_F(n, t, effective);
    };

    Real v = compute(0);
    int esc = 0;
    while (!gconst::render::value_certified(v, o.digits) && esc < 3 && o.precision_bits == 0) {
        ++esc;
        v = compute(esc);
    }
    const bool certified = gconst::render::value_certified(v, o.digits);

    gconst::render::ValueRow row;
    row.name = "F_" + std::to_string(n) + "(" + t_text + ")";
    row.n = n;
    row.value = gconst::render::plain_value(v, o.digits);
    row.certified = certified;
    row.route = "exact-coefficient series with certified geometric tail";

    bool ok = certified;
    if (!certified)
        std::cerr << "efun: value not certified at " << o.digits
                  << " decimal places within the escalation budget\n";
    if (o.seed_check) {
        PrecisionContext refine = effective.escalated();
        Real alt = gconst::efun::eval_F(n, gconst::enclose_decimal(t_text, refine), refine);
        if (!v.intersects(alt)) {
            std::cerr << "seed-check: refined evaluation disagrees\n";
            ok = false;
        }
        row.residual = gconst::render::magnitude_bound(gconst::sub(v, alt));
    }

    gconst::render::PrecisionMeta meta{o.digits, static_cast<long>(effective.working_bits), esc};
    std::cout << gconst::render::value_output("efun", {row}, fmt(o), meta);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    // Fuse "--t <value>" into "--t=<value>" so negative evaluation points are
    // never mistaken for option names.
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if ((a == "--t" || a == "-t") && i + 1 < argc)
            args.push_back(a + "=" + argv[++i]);
        else
            args.push_back(std::move(a));
    }

    CLI::App app{"certified calculator for the eta / gamma / delta constant families"};
    app.require_subcommand(1);

    CommonOpts table_opts;
    unsigned n_max = 15;
    CLI::App* table_cmd =
        app.add_subcommand("table", "print the constants table for n = 0..n-max");
    table_cmd->add_option("-n,--n-max", n_max, "largest order in the table")
        ->capture_default_str();
    add_common(table_cmd, table_opts, true);

    CommonOpts value_opts;
    std::string which;
    unsigned value_n = 1;
    CLI::App* value_cmd = app.add_subcommand("value", "print one constant to a digit target");
    value_cmd->add_option("which", which, "eta | gamma | delta | delta-star")
        ->required()
        ->check(CLI::IsMember({"eta", "gamma", "delta", "delta-star"}));
    value_cmd->add_option("-n,--n", value_n, "order of the constant (ignored for delta-star)")
        ->capture_default_str();
    add_common(value_cmd, value_opts, true);

    CommonOpts verify_opts;
    std::string level = "quick";
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the self-verification suite");
    verify_cmd->add_option("--level", level, "quick | full")
        ->capture_default_str()
        ->check(CLI::IsMember({"quick", "full"}));
    add_common(verify_cmd, verify_opts, false);

    CommonOpts asym_opts;
    std::string kind;
    std::vector<unsigned> ns;
    CLI::App* asym_cmd = app.add_subcommand("asym", "asymptotic brackets and size estimates");
    asym_cmd->add_option("kind", kind, "eta-bracket | gamma-bracket | delta-laplace")
        ->required()
        ->check(CLI::IsMember({"eta-bracket", "gamma-bracket", "delta-laplace"}));
    asym_cmd->add_option("-n,--n", ns, "comma-separated list of orders")
        ->required()
        ->delimiter(',');
    add_common(asym_cmd, asym_opts, false);

    CommonOpts efun_opts;
    unsigned efun_n = 0;
    std::string t_text;
    CLI::App* efun_cmd =
        app.add_subcommand("efun", "evaluate the order-n entire series at a point t");
    efun_cmd->add_option("-n,--n", efun_n, "series order")->capture_default_str();
    efun_cmd->add_option("-t,--t", t_text, "evaluation point (decimal literal)")->required();
    add_common(efun_cmd, efun_opts, true);

    int code = 0;
    table_cmd->callback([&] { code = run_table(n_max, table_opts); });
    value_cmd->callback([&] { code = run_value(which, value_n, value_opts); });
    verify_cmd->callback([&] { code = run_verify(level, verify_opts); });
    asym_cmd->callback([&] { code = run_asym(kind, ns, asym_opts); });
    efun_cmd->callback([&] { code = run_efun(efun_n, t_text, efun_opts); });

    try {
        std::reverse(args.begin(), args.end());  // App::parse consumes back-to-front
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}
