#include "diamond/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace diamond {

namespace {

std::string with_line(std::size_t line, const std::string& message)
{
    if (line == 0) return message;
    return "line " + std::to_string(line) + ": " + message;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text)
{
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<std::size_t> parse_count(std::string_view text)
{
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

enum class Kind { rate, detuning, closure, count, observables, path };

struct KeySpec {
    std::string_view section;
    Kind kind;
};

const std::map<std::string_view, KeySpec>& key_table()
{
    static const std::map<std::string_view, KeySpec> table = {
        {"omega_a1", {"fields", Kind::rate}},       {"omega_a2", {"fields", Kind::rate}},
        {"omega_c1", {"fields", Kind::rate}},       {"omega_c2", {"fields", Kind::rate}},
        {"delta_a1", {"fields", Kind::detuning}},   {"delta_a2", {"fields", Kind::detuning}},
        {"delta_c1", {"fields", Kind::detuning}},   {"delta_c2", {"fields", Kind::detuning}},
        {"closure_target", {"fields", Kind::closure}},
        {"gamma1", {"decays", Kind::rate}},         {"gamma2", {"decays", Kind::rate}},
        {"gamma3", {"decays", Kind::rate}},         {"gamma4", {"decays", Kind::rate}},
        {"delta_min", {"sweep", Kind::detuning}},   {"delta_max", {"sweep", Kind::detuning}},
        {"points", {"sweep", Kind::count}},
        {"observables", {"output", Kind::observables}}, {"out_path", {"output", Kind::path}},
    };
    return table;
}

double* scalar_slot(RunConfig& c, std::string_view key)
{
    Scenario& s = c.sweep.base;
    if (key == "omega_a1") return &s.omega_a1;
    if (key == "omega_a2") return &s.omega_a2;
    if (key == "omega_c1") return &s.omega_c1;
    if (key == "omega_c2") return &s.omega_c2;
    if (key == "delta_a1") return &s.delta_a1;
    if (key == "delta_a2") return &s.delta_a2;
    if (key == "delta_c1") return &s.delta_c1;
    if (key == "delta_c2") return &s.delta_c2;
    if (key == "gamma1") return &s.gamma1;
    if (key == "gamma2") return &s.gamma2;
    if (key == "gamma3") return &s.gamma3;
    if (key == "gamma4") return &s.gamma4;
    if (key == "delta_min") return &c.sweep.delta_min;
    if (key == "delta_max") return &c.sweep.delta_max;
    return nullptr;
}

std::vector<Observable> parse_observable_list(std::string_view text, std::size_t line)
{
    std::vector<Observable> out;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        try {
            out.push_back(parse_observable(item));
        } catch (const PreconditionError& e) {
            throw ConfigError(line, e.what());
        }
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

RunConfig make_preset(double a1, double a2, double c1, double c2, ClosureTarget target,
                      std::vector<Observable> observables)
{
    RunConfig c;
    c.sweep.base.omega_a1 = a1;
    c.sweep.base.omega_a2 = a2;
    c.sweep.base.omega_c1 = c1;
    c.sweep.base.omega_c2 = c2;
    c.sweep.base.closure_target = target;
    c.output.observables = std::move(observables);
    return c;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(with_line(line, message)), line_(line)
{
}

ClosureTarget auto_closure_target(const Scenario& s) noexcept
{
    if (s.omega_a1 == 0.0) return ClosureTarget::a1;
    if (s.omega_c1 == 0.0) return ClosureTarget::c1;
    if (s.omega_a2 == 0.0) return ClosureTarget::a2;
    if (s.omega_c2 == 0.0) return ClosureTarget::c2;
    return ClosureTarget::none;
}

RunConfig parse_config(std::string_view text)
{
    RunConfig config;
    std::optional<ClosureTarget> closure;
    std::map<std::string, std::size_t> seen;
    std::string section;
    std::size_t line_no = 0;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t newline = text.find('\n', pos);
        if (newline == std::string_view::npos) newline = text.size();
        std::string_view raw = text.substr(pos, newline - pos);
        pos = newline + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "fields" && section != "decays" && section != "sweep" && section != "output")
                throw ConfigError(line_no, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        const auto& table = key_table();
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError(line_no, "unknown key '" + key + "'");
        if (section.empty())
            throw ConfigError(line_no, "key '" + key + "' appears before any section header");
        if (it->second.section != section)
            throw ConfigError(line_no, "unknown key '" + key + "' in section [" + section + "]");
        if (const auto prev = seen.find(key); prev != seen.end())
            throw ConfigError(line_no,
                              "duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")");
        seen.emplace(key, line_no);

        switch (it->second.kind) {
        case Kind::rate:
        case Kind::detuning: {
            const auto number = parse_double(value);
            if (!number) throw ConfigError(line_no, "malformed number for '" + key + "': '" + std::string(value) + "'");
            if (it->second.kind == Kind::rate && *number < 0.0)
                throw ConfigError(line_no, "'" + key + "' must be >= 0");
            *scalar_slot(config, key) = *number;
            break;
        }
        case Kind::closure:
            if (value == "auto") break;
            closure = parse_closure_target(value);
            if (!closure)
                throw ConfigError(line_no, "closure_target must be one of a1, a2, c1, c2, none, auto");
            break;
        case Kind::count: {
            const auto count = parse_count(value);
            if (!count || *count < 2) throw ConfigError(line_no, "'points' must be an integer >= 2");
            config.sweep.points = *count;
            break;
        }
        case Kind::observables: config.output.observables = parse_observable_list(value, line_no); break;
        case Kind::path:
            if (value.empty()) throw ConfigError(line_no, "'out_path' must not be empty");
            config.output.out_path = std::string(value);
            break;
        }
    }

    if (!(config.sweep.delta_min < config.sweep.delta_max))
        throw ConfigError(0, "delta_min must be < delta_max");
    config.sweep.base.closure_target = closure ? *closure : auto_closure_target(config.sweep.base);
    return config;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string render_config(const RunConfig& c)
{
    const Scenario& s = c.scenario();
    std::ostringstream os;
    os << "[fields]\n"
       << "omega_a1 = " << format_number(s.omega_a1) << '\n'
       << "omega_a2 = " << format_number(s.omega_a2) << '\n'
       << "omega_c1 = " << format_number(s.omega_c1) << '\n'
       << "omega_c2 = " << format_number(s.omega_c2) << '\n'
       << "delta_a1 = " << format_number(s.delta_a1) << '\n'
       << "delta_a2 = " << format_number(s.delta_a2) << '\n'
       << "delta_c1 = " << format_number(s.delta_c1) << '\n'
       << "delta_c2 = " << format_number(s.delta_c2) << '\n'
       << "closure_target = " << to_string(s.closure_target) << '\n'
       << "\n[decays]\n"
       << "gamma1 = " << format_number(s.gamma1) << '\n'
       << "gamma2 = " << format_number(s.gamma2) << '\n'
       << "gamma3 = " << format_number(s.gamma3) << '\n'
       << "gamma4 = " << format_number(s.gamma4) << '\n'
       << "\n[sweep]\n"
       << "delta_min = " << format_number(c.sweep.delta_min) << '\n'
       << "delta_max = " << format_number(c.sweep.delta_max) << '\n'
       << "points = " << c.sweep.points << '\n'
       << "\n[output]\n"
       << "observables = ";
    for (std::size_t i = 0; i < c.output.observables.size(); ++i)
        os << (i ? "," : "") << to_string(c.output.observables[i]);
    os << '\n';
    if (c.output.out_path) os << "out_path = " << *c.output.out_path << '\n';
    return os.str();
}

const std::vector<Preset>& presets()
{
    using O = Observable;
    using T = ClosureTarget;
    static const std::vector<Preset> table = {
        {"fig4", "case 1 (E3 removed): level populations",
         make_preset(0, 15, 10, 1, T::a1, {O::pop_a, O::pop_b, O::pop_c, O::pop_d})},
        {"fig5", "case 1: probe absorption/dispersion rho_cd", make_preset(0, 15, 10, 1, T::a1, {O::cd})},
        {"fig6a", "case 1 with Omega_a2 = Omega_c1 = 10", make_preset(0, 10, 10, 1, T::a1, {O::cd})},
        {"fig6b", "case 1 with Omega_a2 = 3", make_preset(0, 3, 10, 1, T::a1, {O::cd})},
        {"fig7", "case 1: trig rho_ca and couple rho_db", make_preset(0, 15, 10, 1, T::a1, {O::ca, O::db})},
        {"fig8", "case 1: two-photon term rho_cb", make_preset(0, 15, 10, 1, T::a1, {O::cb})},
        {"fig9-left", "case 2 (E4 removed), couple Omega_c1 = 5",
         make_preset(0.1, 0, 5, 0.1, T::a2, {O::cd, O::ab})},
        {"fig9-right", "case 2, couple Omega_c1 = 1", make_preset(0.1, 0, 1, 0.1, T::a2, {O::cd, O::ab})},
        {"fig10-left", "case 3 (E1 removed), couple Omega_a2 = 10",
         make_preset(0.1, 10, 0, 0.1, T::c1, {O::cd, O::ab})},
        {"fig10-right", "case 3, couple Omega_a2 = 1", make_preset(0.1, 1, 0, 0.1, T::c1, {O::cd, O::ab})},
    };
    return table;
}

RunConfig preset(std::string_view name)
{
    std::string names;
    for (const auto& p : presets()) {
        if (p.name == name) return p.config;
        names += names.empty() ? "" : ", ";
        names += p.name;
    }
    throw PreconditionError("unknown preset '" + std::string(name) + "'; valid presets: " + names);
}

std::string format_number(double value)
{
    if (value == 0.0) value = 0.0;  // no "-0"
    char buffer[40];
    const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

std::string csv_fields(const DensityMatrix& rho)
{
    using O = Observable;
    std::string line;
    for (O pop : {O::pop_a, O::pop_b, O::pop_c, O::pop_d}) {
        if (!line.empty()) line += ',';
        line += format_number(extract_observable(rho, pop).real());
    }
    for (O key : {O::cd, O::ca, O::db, O::cb, O::ab, O::ad, O::bd}) {
        const complex value = extract_observable(rho, key);
        line += ',';
        line += format_number(value.real());
        line += ',';
        line += format_number(value.imag());
    }
    return line;
}

void write_csv(const SweepResult& result, std::ostream& out)
{
    if (result.rows.empty()) throw PreconditionError("write_csv: empty sweep result");
    out << "delta," << kCsvColumns << '\n';
    for (const auto& row : result.rows) out << format_number(row.delta) << ',' << csv_fields(row.rho) << '\n';
}

void write_csv(const SweepResult& result, const std::filesystem::path& destination)
{
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + destination.string() + "' for writing");
    write_csv(result, out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + destination.string() + "' failed");
}

}  // namespace diamond
