#include "qsflow/scanconfig.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "qsflow/errors.hpp"

namespace qsflow {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

struct KeyValue {
    std::string value;
    int line;
    bool used = false;
};

using KvMap = std::map<std::string, KeyValue>;

KvMap tokenize(const std::string& text) {
    KvMap kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = {value, lineno};
    }
    return kv;
}

class ConfigReader {
public:
    explicit ConfigReader(KvMap kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback = "") {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        it->second.used = true;
        return it->second.value;
    }

    double get_double(const std::string& key, double fallback, bool* present = nullptr) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            if (present) *present = false;
            return fallback;
        }
        it->second.used = true;
        if (present) *present = true;
        try {
            std::size_t pos = 0;
            double v = std::stod(it->second.value, &pos);
            if (pos != it->second.value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            issues.push_back(key + ": not a number (line " +
                             std::to_string(it->second.line) + ")");
            return fallback;
        }
    }

    int get_int(const std::string& key, int fallback) {
        const double v = get_double(key, fallback);
        return static_cast<int>(v);
    }

    bool get_bool(const std::string& key, bool fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        it->second.used = true;
        std::string v = it->second.value;
        std::transform(v.begin(), v.end(), v.begin(), ::tolower);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        issues.push_back(key + ": expected a boolean (line " +
                         std::to_string(it->second.line) + ")");
        return fallback;
    }

    void flag_unused() {
        for (const auto& [key, entry] : kv_)
            if (!entry.used)
                issues.push_back(key + ": unknown key (line " +
                                 std::to_string(entry.line) + ")");
    }

    std::vector<std::string> issues;

private:
    KvMap kv_;
};

RateFunction parse_rate(ConfigReader& reader, const std::string& prefix,
                        std::vector<std::string>& issues) {
    const std::string family = reader.get_string(prefix + ".family", "constant");
    if (family == "constant") {
        return RateFunction::constant(reader.get_double(prefix + ".params.c", 0.0));
    }
    if (family == "ramp") {
        return RateFunction::ramp(reader.get_double(prefix + ".params.a", 0.0),
                                  reader.get_double(prefix + ".params.b", 0.0));
    }
    if (family == "damped_oscillatory") {
        return RateFunction::damped_oscillatory(
            reader.get_double(prefix + ".params.c", 0.0),
            reader.get_double(prefix + ".params.kappa", 0.0),
            reader.get_double(prefix + ".params.omega", 0.0));
    }
    issues.push_back(prefix + ".family: unknown rate family '" + family + "'");
    return RateFunction::constant(0.0);
}

} // namespace

FrameKind frame_kind_from_name(const std::string& name, int dim) {
    if (name == "wootters") return FrameKind::WoottersWigner;
    if (name == "gross") return FrameKind::GrossWigner;
    if (name == "sic") return FrameKind::SicPovm;
    if (name == "wigner")
        return dim == 3 ? FrameKind::GrossWigner : FrameKind::WoottersWigner;
    throw ValidationError({"frame.kind: unknown frame '" + name + "'"});
}

ScanConfig parse_config(const std::string& text) {
    ConfigReader reader(tokenize(text));
    ScanConfig cfg;
    std::vector<std::string>& issues = reader.issues;

    const std::string kind = reader.get_string("model.kind", "");
    if (kind == "pure_decoherence") cfg.model.kind = ModelKind::PureDecoherence;
    else if (kind == "dissipation") cfg.model.kind = ModelKind::Dissipation;
    else if (kind == "random_unitary") cfg.model.kind = ModelKind::RandomUnitary;
    else issues.push_back("model.kind: expected pure_decoherence, dissipation or random_unitary");

    cfg.model.d = reader.get_int("model.dim", 2);
    if (cfg.model.d != 2 && cfg.model.d != 3)
        issues.push_back("model.dim: supported dimensions are 2 and 3");
    if (cfg.model.d == 3 && cfg.model.kind != ModelKind::RandomUnitary)
        issues.push_back("model.dim: the decoherence models are qubit models");

    if (cfg.model.kind == ModelKind::PureDecoherence ||
        cfg.model.kind == ModelKind::Dissipation) {
        const std::string family = reader.get_string("model.G.family", "");
        try {
            if (family == "exponential") {
                cfg.model.g = DecoherenceFunction::exponential(
                    reader.get_double("model.G.params.kappa", 1.0));
            } else if (family == "damped_oscillatory") {
                cfg.model.g = DecoherenceFunction::damped_oscillatory(
                    reader.get_double("model.G.params.kappa", 1.0),
                    reader.get_double("model.G.params.omega", 1.0));
            } else if (family == "jaynes_cummings") {
                cfg.model.g = DecoherenceFunction::jaynes_cummings(
                    reader.get_double("model.G.params.lambda", 1.0),
                    reader.get_double("model.G.params.gamma0", 1.0));
            } else {
                issues.push_back("model.G.family: unknown decoherence family '" + family + "'");
            }
        } catch (const InvalidParams& e) {
            issues.push_back(std::string("model.G.params: ") + e.what());
        }
    } else if (cfg.model.kind == ModelKind::RandomUnitary) {
        const int nrates = cfg.model.d * cfg.model.d - 1;
        cfg.model.rates.d = cfg.model.d;
        cfg.model.rates.gammas.assign(nrates, RateFunction::constant(0.0));
        for (int k = 1; k <= nrates; ++k) {
            const std::string prefix = "model.rates." + std::to_string(k);
            if (reader.has(prefix + ".family") || reader.has(prefix + ".params.c") ||
                reader.has(prefix + ".params.a"))
                cfg.model.rates.gammas[k - 1] = parse_rate(reader, prefix, issues);
        }
    }

    cfg.t0 = reader.get_double("grid.t0", 0.0);
    cfg.t1 = reader.get_double("grid.t1", 1.0);
    cfg.steps = reader.get_int("grid.steps", 2000);
    if (cfg.t0 < 0.0) issues.push_back("grid.t0: must be >= 0");
    if (!(cfg.t1 > cfg.t0)) issues.push_back("grid.t1: must be > grid.t0");
    if (cfg.steps < 3) issues.push_back("grid.steps: must be >= 3");

    const std::string frame = reader.get_string("frame.kind", "wigner");
    try {
        cfg.frame = frame_kind_from_name(frame, cfg.model.d);
    } catch (const ValidationError& e) {
        issues.insert(issues.end(), e.issues.begin(), e.issues.end());
    }
    if (cfg.frame == FrameKind::WoottersWigner && cfg.model.d == 3)
        issues.push_back("frame.kind: wootters is a qubit frame");
    if (cfg.frame == FrameKind::GrossWigner && cfg.model.d == 2)
        issues.push_back("frame.kind: gross is a qutrit frame");

    cfg.output_path = reader.get_string("output.path", "");
    cfg.emit_eigenvalues = reader.get_bool("flags.emit_eigenvalues", true);
    cfg.emit_entropy = reader.get_bool("flags.emit_entropy", false);
    cfg.compare_oracles = reader.get_bool("flags.compare_oracles", false);

    reader.flag_unused();
    if (!issues.empty()) throw ValidationError(issues);
    return cfg;
}

ScanConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace qsflow
