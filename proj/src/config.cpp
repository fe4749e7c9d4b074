#include "frex/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace frex::config {

namespace {

std::string join(const std::vector<std::string>& errs) {
    std::string out = "configuration invalid:";
    for (const auto& e : errs) {
        out += "\n  - ";
        out += e;
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

// section -> known keys
const std::map<std::string, std::set<std::string>> kSchema = {
    {"model", {"dim", "sigma", "mu", "nu", "p", "q", "epsilon", "nonlin"}},
    {"grid", {"points", "half_length"}},
    {"time", {"dt", "t_max", "snapshot_stride", "dealias", "duhamel_check"}},
    {"initial_u", {"kind", "amplitude", "width", "center", "mode_index", "path"}},
    {"initial_v", {"kind", "amplitude", "width", "center", "mode_index", "path"}},
    {"lifespan",
     {"eps_list", "eps_min", "eps_max", "count", "blowup_threshold", "workers", "hard_cap"}},
    {"output", {"directory", "emit_svg"}},
};

struct RawConfig {
    std::map<std::string, std::string> kv;  // "section.key" -> value
    std::vector<std::string> errors;

    bool has(const std::string& sk) const { return kv.count(sk) != 0; }
};

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                raw.errors.push_back("line " + std::to_string(lineno) +
                                     ": malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!kSchema.count(section))
                raw.errors.push_back("line " + std::to_string(lineno) + ": unknown section [" +
                                     section + "]");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            raw.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            raw.errors.push_back("line " + std::to_string(lineno) + ": key '" + key +
                                 "' outside any section");
            continue;
        }
        auto it = kSchema.find(section);
        if (it != kSchema.end() && !it->second.count(key)) {
            raw.errors.push_back("line " + std::to_string(lineno) + ": unknown key " + section +
                                 "." + key);
            continue;
        }
        raw.kv[section + "." + key] = value;
    }
    return raw;
}

void apply_env(RawConfig& raw) {
    for (const auto& [section, keys] : kSchema) {
        for (const auto& key : keys) {
            std::string var = "FREX_" + upper(section) + "__" + upper(key);
            if (const char* v = std::getenv(var.c_str())) raw.kv[section + "." + key] = v;
        }
    }
}

// Typed readers; each records a problem instead of throwing.
struct Reader {
    const RawConfig& raw;
    std::vector<std::string>& errors;

    bool get_double(const std::string& sk, double& out) {
        auto it = raw.kv.find(sk);
        if (it == raw.kv.end()) return false;
        char* end = nullptr;
        double v = std::strtod(it->second.c_str(), &end);
        if (end == it->second.c_str() || *end != '\0') {
            errors.push_back(sk + ": '" + it->second + "' is not a number");
            return false;
        }
        out = v;
        return true;
    }

    bool get_int(const std::string& sk, int& out) {
        auto it = raw.kv.find(sk);
        if (it == raw.kv.end()) return false;
        char* end = nullptr;
        long v = std::strtol(it->second.c_str(), &end, 10);
        if (end == it->second.c_str() || *end != '\0') {
            errors.push_back(sk + ": '" + it->second + "' is not an integer");
            return false;
        }
        out = static_cast<int>(v);
        return true;
    }

    bool get_bool(const std::string& sk, bool& out) {
        auto it = raw.kv.find(sk);
        if (it == raw.kv.end()) return false;
        std::string v = it->second;
        std::transform(v.begin(), v.end(), v.begin(), ::tolower);
        if (v == "true" || v == "1" || v == "on" || v == "yes") {
            out = true;
        } else if (v == "false" || v == "0" || v == "off" || v == "no") {
            out = false;
        } else {
            errors.push_back(sk + ": '" + it->second + "' is not a boolean");
            return false;
        }
        return true;
    }

    bool get_string(const std::string& sk, std::string& out) {
        auto it = raw.kv.find(sk);
        if (it == raw.kv.end()) return false;
        out = it->second;
        return true;
    }

    bool get_list(const std::string& sk, std::vector<double>& out) {
        auto it = raw.kv.find(sk);
        if (it == raw.kv.end()) return false;
        out.clear();
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            char* end = nullptr;
            double v = std::strtod(item.c_str(), &end);
            if (end == item.c_str() || *end != '\0') {
                errors.push_back(sk + ": '" + item + "' is not a number");
                return false;
            }
            out.push_back(v);
        }
        if (out.empty()) {
            errors.push_back(sk + ": empty list");
            return false;
        }
        return true;
    }
};

void read_data_spec(Reader& r, const std::string& section, initial_data::DataSpec& spec,
                    std::vector<std::string>& errors) {
    std::string kind;
    if (r.get_string(section + ".kind", kind)) {
        if (kind == "gaussian") {
            spec.kind = initial_data::Kind::gaussian;
        } else if (kind == "bump") {
            spec.kind = initial_data::Kind::bump;
        } else if (kind == "mode") {
            spec.kind = initial_data::Kind::mode;
        } else if (kind == "constant") {
            spec.kind = initial_data::Kind::constant;
        } else if (kind == "file") {
            spec.kind = initial_data::Kind::file;
        } else {
            errors.push_back(section + ".kind: '" + kind +
                             "' is not one of gaussian|bump|mode|constant|file");
        }
    }
    r.get_double(section + ".amplitude", spec.amplitude);
    r.get_double(section + ".width", spec.width);
    r.get_int(section + ".mode_index", spec.mode_index);
    r.get_string(section + ".path", spec.path);
    std::vector<double> center;
    if (r.get_list(section + ".center", center)) {
        if (center.size() > 3) {
            errors.push_back(section + ".center: at most 3 components");
        } else {
            for (std::size_t i = 0; i < center.size(); ++i) spec.center[i] = center[i];
        }
    }
    if ((spec.kind == initial_data::Kind::gaussian || spec.kind == initial_data::Kind::bump) &&
        !(spec.width > 0.0))
        errors.push_back(section + ".width: must be > 0");
    if (spec.kind == initial_data::Kind::file && spec.path.empty())
        errors.push_back(section + ".path: required for kind = file");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::runtime_error(join(errs)), problems(std::move(errs)) {}

GridSpec ExperimentConfig::grid() const {
    return GridSpec{dim, points, half_length};
}

semilinear::SemilinearParams ExperimentConfig::semilinear_params() const {
    semilinear::SemilinearParams sp;
    sp.exchanger = exchanger::ExchangerParams{sigma, mu, nu};
    sp.p = p;
    sp.q = q;
    sp.epsilon = epsilon;
    sp.convention = nonlin;
    return sp;
}

semilinear::SolverConfig ExperimentConfig::solver_config() const {
    semilinear::SolverConfig sc;
    sc.dt = dt;
    sc.t_max = t_max;
    sc.snapshot_stride = snapshot_stride;
    sc.blowup_threshold = blowup_threshold;
    sc.dealias = dealias;
    return sc;
}

ExperimentConfig parse_config_text(const std::string& text) {
    RawConfig raw = tokenize(text);
    apply_env(raw);
    std::vector<std::string> errors = raw.errors;
    Reader r{raw, errors};

    ExperimentConfig c;
    r.get_int("model.dim", c.dim);
    r.get_double("model.sigma", c.sigma);
    r.get_double("model.mu", c.mu);
    r.get_double("model.nu", c.nu);
    r.get_double("model.p", c.p);
    r.get_double("model.q", c.q);
    r.get_double("model.epsilon", c.epsilon);
    std::string nonlin;
    if (r.get_string("model.nonlin", nonlin)) {
        if (nonlin == "signed") {
            c.nonlin = semilinear::Nonlin::signed_power;
        } else if (nonlin == "plain") {
            c.nonlin = semilinear::Nonlin::plain_power;
        } else {
            errors.push_back("model.nonlin: '" + nonlin + "' is not signed|plain");
        }
    }
    r.get_int("grid.points", c.points);
    r.get_double("grid.half_length", c.half_length);
    r.get_double("time.dt", c.dt);
    r.get_double("time.t_max", c.t_max);
    r.get_int("time.snapshot_stride", c.snapshot_stride);
    r.get_bool("time.dealias", c.dealias);
    r.get_bool("time.duhamel_check", c.duhamel_check);
    read_data_spec(r, "initial_u", c.initial_u, errors);
    read_data_spec(r, "initial_v", c.initial_v, errors);

    bool have_list = r.get_list("lifespan.eps_list", c.eps_list);
    double eps_min = 0.0, eps_max = 0.0;
    int count = 0;
    bool have_min = r.get_double("lifespan.eps_min", eps_min);
    bool have_max = r.get_double("lifespan.eps_max", eps_max);
    bool have_count = r.get_int("lifespan.count", count);
    if (!have_list && (have_min || have_max || have_count)) {
        if (!(have_min && have_max && have_count)) {
            errors.push_back("lifespan: eps_min, eps_max and count must be given together");
        } else if (!(eps_min > 0.0) || !(eps_max > eps_min) || count < 2) {
            errors.push_back(
                "lifespan: need 0 < eps_min < eps_max and count >= 2 to build a grid");
        } else {
            for (int k = 0; k < count; ++k)
                c.eps_list.push_back(eps_max * std::pow(eps_min / eps_max,
                                                        static_cast<double>(k) / (count - 1)));
        }
    }
    r.get_double("lifespan.blowup_threshold", c.blowup_threshold);
    r.get_int("lifespan.workers", c.workers);
    r.get_double("lifespan.hard_cap", c.hard_cap);
    r.get_string("output.directory", c.directory);
    r.get_bool("output.emit_svg", c.emit_svg);

    // constraint checks mirror the module preconditions
    if (c.dim < 1 || c.dim > 3) errors.push_back("model.dim: must be 1..3");
    if (!(c.sigma > 0.0)) errors.push_back("model.sigma: must be > 0");
    if (!(c.mu > 0.0)) errors.push_back("model.mu: must be > 0");
    if (!(c.nu > 0.0)) errors.push_back("model.nu: must be > 0");
    if (!(c.p > 1.0)) errors.push_back("model.p: must be > 1");
    if (!(c.q > 1.0)) errors.push_back("model.q: must be > 1");
    if (!(c.epsilon >= 0.0)) errors.push_back("model.epsilon: must be >= 0");
    if (c.points < 8 || c.points % 2 != 0) errors.push_back("grid.points: must be even and >= 8");
    if (!(c.half_length > 0.0)) errors.push_back("grid.half_length: must be > 0");
    if (!(c.dt > 0.0)) errors.push_back("time.dt: must be > 0");
    if (!(c.t_max > c.dt)) errors.push_back("time.t_max: must exceed dt");
    if (c.snapshot_stride < 1) errors.push_back("time.snapshot_stride: must be >= 1");
    if (!(c.blowup_threshold > 1.0)) errors.push_back("lifespan.blowup_threshold: must be > 1");
    if (c.workers < 1) errors.push_back("lifespan.workers: must be >= 1");
    if (!(c.hard_cap > 0.0)) errors.push_back("lifespan.hard_cap: must be > 0");
    for (std::size_t i = 0; i + 1 < c.eps_list.size(); ++i)
        if (!(c.eps_list[i + 1] < c.eps_list[i])) {
            errors.push_back("lifespan.eps_list: must be strictly decreasing");
            break;
        }
    for (double e : c.eps_list)
        if (!(e > 0.0)) {
            errors.push_back("lifespan.eps_list: entries must be > 0");
            break;
        }
    (void)have_list;

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace frex::config
