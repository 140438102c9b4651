#include "emflow/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "emflow/csv.hpp"

namespace emflow::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (v != std::floor(v)) throw ConfigError("config: '" + key + "' must be an integer");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("config: bad boolean for '" + key + "': '" + text + "'");
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> pairs;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        pairs[section.empty() ? key : section + "." + key] = value;
    }
    return pairs;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double("list item", item));
    }
    return out;
}

InputMode parse_mode(const std::string& text) {
    if (text == "asy" || text == "vector_potential") return InputMode::vector_potential;
    if (text == "bx" || text == "flux_density") return InputMode::flux_density;
    throw ConfigError("config: mode must be 'asy' or 'bx', got '" + text + "'");
}

const char* mode_name(InputMode mode) {
    return mode == InputMode::vector_potential ? "asy" : "bx";
}

RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs) {
    RunConfig cfg;
    for (const auto& [key, value] : pairs) {
        if (key == "physical.mu") cfg.params.mu = parse_double(key, value);
        else if (key == "physical.sigma") cfg.params.sigma = parse_double(key, value);
        else if (key == "physical.u_z") cfg.params.u_z = parse_double(key, value);
        else if (key == "field.a") cfg.field.a = parse_double(key, value);
        else if (key == "field.b") cfg.field.b = parse_double(key, value);
        else if (key == "field.B") cfg.field.B = parse_double(key, value);
        else if (key == "field.L") cfg.field.L = parse_double(key, value);
        else if (key == "mesh.dz") cfg.dz = parse_double(key, value);
        else if (key == "mesh.order") cfg.order = parse_int(key, value);
        else if (key == "run.mode") cfg.mode = parse_mode(value);
        else if (key == "run.pe") cfg.pe = parse_double(key, value);
        else if (key == "run.out") cfg.out_dir = value;
        else if (key == "run.plot") cfg.plot = parse_bool(key, value);
        else if (key == "sweep.pe_list") cfg.pe_list = parse_double_list(value);
        else if (key == "sweep.pe_min") cfg.sweep_min = parse_double(key, value);
        else if (key == "sweep.pe_max") cfg.sweep_max = parse_double(key, value);
        else if (key == "sweep.count") cfg.sweep_count = parse_int(key, value);
        else if (key == "fem2d.d_list") cfg.d_list = parse_double_list(value);
        else if (key == "fem2d.u_z") cfg.u_z_2d = parse_double(key, value);
        else if (key == "fem2d.target_pe") cfg.target_pe_2d = parse_double(key, value);
        else if (key == "fem2d.window_lo") cfg.window_lo_frac = parse_double(key, value);
        else if (key == "fem2d.window_hi") cfg.window_hi_frac = parse_double(key, value);
        else if (key == "fem2d.plate_thickness") cfg.plate_thickness = parse_double(key, value);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    return cfg;
}

std::size_t RunConfig::n_nodes() const {
    const double ratio = field.L / dz;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9)
        throw ConfigError("config: field.L must be an integer multiple of dz");
    return static_cast<std::size_t>(rounded) + 1;
}

void RunConfig::resolve() {
    if (!(dz > 0.0)) throw ConfigError("config: dz must be positive");
    if (order != 1 && order != 2) throw ConfigError("config: order must be 1 or 2");
    if (pe) {
        if (!(*pe > 0.0)) throw ConfigError("config: pe must be positive");
        params.u_z = 2.0 * (*pe) / (params.mu * params.sigma * dz);
    }
    try {
        params.validate();
        field.validate();
        mesh().validate();
        (void)field_node_indices(mesh(), field);
    } catch (const std::exception& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
    if (pe_list.empty()) {
        if (!(sweep_min > 0.0) || !(sweep_max > sweep_min) || sweep_count < 2)
            throw ConfigError("config: bad sweep range");
    }
    if (d_list.empty()) throw ConfigError("config: fem2d.d_list must not be empty");
    for (double d : d_list)
        if (!(d > 0.0)) throw ConfigError("config: fem2d gaps must be positive");
    if (!(u_z_2d > 0.0)) throw ConfigError("config: fem2d.u_z must be positive");
    if (!(target_pe_2d > 0.0 && target_pe_2d < 1.0))
        throw ConfigError("config: fem2d.target_pe must lie in (0, 1)");
    if (!(0.0 < window_lo_frac && window_lo_frac < window_hi_frac && window_hi_frac < 1.0))
        throw ConfigError("config: fem2d window fractions must satisfy 0 < lo < hi < 1");
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out << "field.B=" << csv::format_double(field.B) << '\n'
        << "field.L=" << csv::format_double(field.L) << '\n'
        << "field.a=" << csv::format_double(field.a) << '\n'
        << "field.b=" << csv::format_double(field.b) << '\n';
    out << "fem2d.d_list=";
    for (std::size_t i = 0; i < d_list.size(); ++i)
        out << (i ? "," : "") << csv::format_double(d_list[i]);
    out << '\n';
    out << "fem2d.plate_thickness=" << csv::format_double(plate_thickness) << '\n'
        << "fem2d.target_pe=" << csv::format_double(target_pe_2d) << '\n'
        << "fem2d.u_z=" << csv::format_double(u_z_2d) << '\n'
        << "fem2d.window_hi=" << csv::format_double(window_hi_frac) << '\n'
        << "fem2d.window_lo=" << csv::format_double(window_lo_frac) << '\n'
        << "mesh.dz=" << csv::format_double(dz) << '\n'
        << "mesh.order=" << order << '\n'
        << "physical.mu=" << csv::format_double(params.mu) << '\n'
        << "physical.sigma=" << csv::format_double(params.sigma) << '\n'
        << "physical.u_z=" << csv::format_double(params.u_z) << '\n'
        << "run.mode=" << mode_name(mode) << '\n';
    out << "run.pe=" << (pe ? csv::format_double(*pe) : "derived") << '\n';
    out << "sweep.count=" << sweep_count << '\n'
        << "sweep.pe_list=";
    for (std::size_t i = 0; i < pe_list.size(); ++i)
        out << (i ? "," : "") << csv::format_double(pe_list[i]);
    out << '\n';
    out << "sweep.pe_max=" << csv::format_double(sweep_max) << '\n'
        << "sweep.pe_min=" << csv::format_double(sweep_min) << '\n';
    return out.str();
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
    if (!cfg.pe_list.empty()) return cfg.pe_list;
    std::vector<double> grid(static_cast<std::size_t>(cfg.sweep_count));
    const double lo = std::log(cfg.sweep_min);
    const double hi = std::log(cfg.sweep_max);
    for (int i = 0; i < cfg.sweep_count; ++i)
        grid[static_cast<std::size_t>(i)] =
            std::exp(lo + (hi - lo) * static_cast<double>(i) / (cfg.sweep_count - 1));
    return grid;
}

}  // namespace emflow::cli
