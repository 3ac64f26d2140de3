#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gconst/asymptotics.hpp"
#include "gconst/ball.hpp"
#include "gconst/constants.hpp"
#include "gconst/verify.hpp"

namespace gconst::render {

enum class Format { Text, Csv, Json };

// "text" | "csv" | "json"; throws std::invalid_argument otherwise.
Format parse_format(const std::string& name);

// Truncated decimal rendering of a ball at `digits` decimal places.  Exact
// integer balls render in the minimal "N.0" form the reference table uses for
// its closed-form cells.  The string never carries thousands separators;
// those are a text-format-only decoration added by with_separators.
std::string plain_value(const Real& v, int digits);
// True when every point of the ball truncates to the same `digits`-place
// decimal, i.e. the printed string is pinned.
bool value_certified(const Real& v, int digits);
// Inserts thousands separators into the integer part of a plain decimal.
std::string with_separators(const std::string& plain);
// Compact scientific upper bound on |v| ("3.1e-52"), for residual columns.
std::string magnitude_bound(const Real& v);

// Precision metadata echoed into every envelope.
struct PrecisionMeta {
    int target_digits = 0;
    long working_bits = 0;
    int escalations = 0;
};

// Reference-table output.  CSV: header "n,eta,gamma,delta", plain truncated
// decimals, LF line endings.  JSON: {command, precision:{target_digits,
// working_bits, escalations}, rows:[{n, eta, gamma, delta,
// certified:{eta,gamma,delta}, residual}], verdict}.  Text: aligned columns
// with thousands separators.  All three carry identical digit strings.
std::string table_output(const constants::TableResult& t, Format f, const PrecisionMeta& meta);

// One named scalar (value/efun commands).
struct ValueRow {
    std::string name;           // "eta", "gamma", "delta", "delta-star", "F_n"
    std::optional<unsigned> n;  // absent for delta-star
    std::string value;          // pre-rendered numeric string (format parity)
    bool certified = false;
    std::string route;     // provenance note, text format only
    std::string residual;  // optional magnitude bound (cross-route gap)
};
std::string value_output(const std::string& command, const std::vector<ValueRow>& rows, Format f,
                         const PrecisionMeta& meta);

// Verification-suite report (verify command).
std::string suite_output(const verify::SuiteReport& rep, Format f, const PrecisionMeta& meta);

// Asymptotics report (asym command); `kind` selects which columns apply.
std::string asym_output(const std::string& kind,
                        const std::vector<asymptotics::AsymptoticRow>& rows, int digits, Format f,
                        const PrecisionMeta& meta);

}  // namespace gconst::render
