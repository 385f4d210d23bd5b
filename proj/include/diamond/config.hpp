#pragma once

#include "diamond/atom.hpp"
#include "diamond/sweep.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diamond {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);

    /// 1-based; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct OutputOptions {
    std::vector<Observable> observables{Observable::cd};
    std::optional<std::string> out_path;

    friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct RunConfig {
    SweepSpec sweep;  // sweep.base holds the scenario
    OutputOptions output;

    const Scenario& scenario() const noexcept { return sweep.base; }
};

/// Closure target used when the config does not name one: the detuning of the
/// first inactive field in the order a1, c1, a2, c2, or none.
ClosureTarget auto_closure_target(const Scenario& s) noexcept;

/// INI-style document:
///
///   [fields]  omega_a1 omega_a2 omega_c1 omega_c2 delta_a1 delta_a2 delta_c1 delta_c2 closure_target
///   [decays]  gamma1 gamma2 gamma3 gamma4
///   [sweep]   delta_min delta_max points
///   [output]  observables out_path
///
/// '#' starts a comment. Unknown sections or keys, duplicates, malformed
/// numbers and negative rates are errors carrying the line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(render_config(c)) reproduces c.
std::string render_config(const RunConfig& config);

struct Preset {
    std::string name;
    std::string description;
    RunConfig config;
};

const std::vector<Preset>& presets();
/// Throws PreconditionError listing the valid names.
RunConfig preset(std::string_view name);

/// 17 significant digits, '.' separator.
std::string format_number(double value);

inline constexpr std::string_view kCsvColumns =
    "rho_aa,rho_bb,rho_cc,rho_dd,re_cd,im_cd,re_ca,im_ca,re_db,im_db,re_cb,im_cb,re_ab,im_ab,re_ad,im_ad,re_bd,im_bd";

/// CSV row body (without the leading key column) for one density matrix.
std::string csv_fields(const DensityMatrix& rho);

void write_csv(const SweepResult& result, std::ostream& out);
void write_csv(const SweepResult& result, const std::filesystem::path& destination);

}  // namespace diamond
