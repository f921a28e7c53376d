#include "ascal/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ascal {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ContractViolation("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

std::string num(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ContractViolation("config: line " + std::to_string(line_no) +
                                    " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ContractViolation("config: empty key");
        cfg.kv[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ContractViolation("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_text(ss.str());
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

std::string RunConfig::require_string(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw ContractViolation("config: missing required key " + key);
    return it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_double(key, it->second);
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (...) {
        throw ContractViolation("config: bad integer for " + key);
    }
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const std::string& v = it->second;
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ContractViolation("config: bad boolean for " + key + " (use on/off)");
}

std::vector<NormRequest> parse_norm_list(const std::string& text) {
    std::vector<NormRequest> out;
    std::stringstream ss(text);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        NormRequest nr;
        const auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw ContractViolation("norms: entry must start with G: or X:");
        const std::string tag = trim(entry.substr(0, colon));
        if (tag == "G")
            nr.is_x = false;
        else if (tag == "X")
            nr.is_x = true;
        else
            throw ContractViolation("norms: unknown tag " + tag);

        std::stringstream fields(entry.substr(colon + 1));
        std::string field;
        while (std::getline(fields, field, ',')) {
            field = trim(field);
            if (field.empty()) continue;
            if (field == "phi") {
                nr.envelope_weight = true;
                continue;
            }
            const auto eq = field.find('=');
            if (eq == std::string::npos)
                throw ContractViolation("norms: bad field " + field);
            const std::string k = trim(field.substr(0, eq));
            const double v = parse_double("norms." + k, trim(field.substr(eq + 1)));
            if (k == "a") {
                nr.norm.a = v;
                nr.xnorm.a = v;
            } else if (k == "kappa" || k == "k") {
                nr.norm.kappa = v;
            } else if (k == "r") {
                nr.norm.r = v;
                nr.xnorm.r = v;
            } else if (k == "sr") {
                nr.xnorm.sigma_r = v;
            } else if (k == "sq") {
                nr.xnorm.sigma_q = v;
            } else if (k == "q") {
                nr.xnorm.q = v;
            } else {
                throw ContractViolation("norms: unknown field " + k);
            }
        }
        if (nr.is_x) {
            nr.name = "X_a" + num(nr.xnorm.a) + "_sr" + num(nr.xnorm.sigma_r) + "_r" +
                      num(nr.xnorm.r) + "_sq" + num(nr.xnorm.sigma_q) + "_q" + num(nr.xnorm.q);
        } else {
            nr.name = "G_a" + num(nr.norm.a) + "_k" + num(nr.norm.kappa) + "_r" + num(nr.norm.r);
        }
        if (nr.envelope_weight) nr.name += "_phi";
        out.push_back(std::move(nr));
    }
    return out;
}

SimulationSetup RunConfig::setup() const {
    SimulationSetup s;
    s.physics.grid.d = static_cast<int>(get_int("grid.d", 2));
    s.physics.grid.n = static_cast<int>(get_int("grid.n", 32));
    s.physics.grid.length = get_double("grid.length", 2 * 3.14159265358979323846);

    const std::string kpreset = get_string("kernel.preset", "riesz");
    const std::string sign_s = get_string("kernel.sign", "repulsive");
    const int sign = sign_s == "attractive" ? -1
                     : sign_s == "repulsive"
                         ? +1
                         : throw ContractViolation("config: kernel.sign must be attractive|repulsive");
    if (kpreset == "newtonian2d") {
        s.physics.kernel = KernelSpec::newtonian2d(sign);
    } else if (kpreset == "riesz") {
        s.physics.kernel =
            KernelSpec::riesz(get_double("kernel.gamma", 1.0), sign, get_double("kernel.c", 1.0));
    } else {
        throw ContractViolation("config: kernel.preset must be riesz|newtonian2d");
    }

    const std::string ctype = get_string("coupling.type", "gradient");
    if (ctype == "gradient") {
        s.physics.coupling = CouplingMatrix::gradient_flow(s.physics.grid.d);
    } else if (ctype == "hamiltonian2d") {
        s.physics.coupling = CouplingMatrix::hamiltonian2d();
    } else if (ctype == "custom") {
        std::array<std::array<double, 2>, 2> m{{{0, 0}, {0, 0}}};
        std::stringstream ss(require_string("coupling.matrix"));
        std::string cell;
        int idx = 0;
        const int d = s.physics.grid.d;
        while (std::getline(ss, cell, ',')) {
            if (idx >= d * d) throw ContractViolation("config: too many coupling.matrix entries");
            m[idx / d][idx % d] = parse_double("coupling.matrix", trim(cell));
            ++idx;
        }
        if (idx != d * d) throw ContractViolation("config: coupling.matrix needs d*d entries");
        s.physics.coupling = CouplingMatrix::custom(d, m);
    } else {
        throw ContractViolation("config: coupling.type must be gradient|hamiltonian2d|custom");
    }

    s.physics.noise.s = get_double("noise.s", 1.0);
    s.physics.noise.nu = get_double("noise.nu", 1.0);
    const std::string form = get_string("noise.form", "inhomogeneous");
    if (form == "inhomogeneous")
        s.physics.noise.inhomogeneous = true;
    else if (form == "homogeneous")
        s.physics.noise.inhomogeneous = false;
    else
        throw ContractViolation("config: noise.form must be inhomogeneous|homogeneous");

    s.physics.envelope.alpha = get_double("envelope.alpha", 1.0);
    s.physics.envelope.beta = get_double("envelope.beta", 0.1);
    s.physics.envelope.epsilon = get_double("envelope.epsilon", 0.0);
    s.physics.overflow_cap = get_double("overflow_cap", kDefaultLogCap);

    s.integrator.dt = get_double("integrator.dt", 1e-3);
    const std::string scheme = get_string("integrator.scheme", "etdrk2");
    if (scheme == "etd1")
        s.integrator.scheme = Scheme::etd1;
    else if (scheme == "etdrk2")
        s.integrator.scheme = Scheme::etdrk2;
    else if (scheme == "rk4")
        s.integrator.scheme = Scheme::rk4;
    else
        throw ContractViolation("config: integrator.scheme must be etd1|etdrk2|rk4");
    const std::string mode = get_string("integrator.mode", "ito");
    if (mode == "ito")
        s.integrator.mode = Mode::ito;
    else if (mode == "stratonovich")
        s.integrator.mode = Mode::stratonovich;
    else if (mode == "deterministic")
        s.integrator.mode = Mode::deterministic;
    else
        throw ContractViolation("config: integrator.mode must be ito|stratonovich|deterministic");
    s.integrator.horizon = get_double("integrator.horizon", 1.0);
    s.integrator.chi = get_double("integrator.chi", 0.0);
    s.integrator.lambda = get_double("integrator.lambda", 2.0);

    const std::string dpreset = get_string("datum.preset", "gaussian");
    if (dpreset == "gaussian")
        s.datum.preset = DatumSpec::Preset::gaussian;
    else if (dpreset == "dipole")
        s.datum.preset = DatumSpec::Preset::dipole;
    else if (dpreset == "random")
        s.datum.preset = DatumSpec::Preset::random;
    else
        throw ContractViolation("config: datum.preset must be gaussian|dipole|random");
    s.datum.mass = get_double("datum.mass", 1.0);
    s.datum.width = get_double("datum.width", 1.0);
    s.datum.separation = get_double("datum.separation", 0.0);
    s.datum.amplitude = get_double("datum.amplitude", 0.1);
    s.datum.radius = get_double("datum.radius", 1.0);
    s.datum.seed = static_cast<std::uint64_t>(get_int("datum.seed", 1));
    s.datum.scale = get_double("datum.scale", 1.0);

    s.norms = parse_norm_list(get_string("norms", ""));
    s.audited_norm = static_cast<int>(get_int("audited_norm", s.norms.empty() ? -1 : 0));
    s.seed = static_cast<std::uint64_t>(get_int("seed", 1));
    s.stride = static_cast<int>(get_int("output.stride", 10));
    s.enable_second_moment = get_bool("output.second_moment", false);
    s.enable_audit = get_bool("output.audit", false);
    s.validate();
    return s;
}

OutputOptions RunConfig::output() const {
    OutputOptions o;
    o.csv_path = get_string("output.csv", "");
    o.json_path = get_string("output.json", "");
    o.plot = get_bool("output.plot", false);
    o.expect = get_string("expect", "horizon");
    if (o.expect != "horizon" && o.expect != "blowup" && o.expect != "overflow")
        throw ContractViolation("config: expect must be horizon|blowup|overflow");
    return o;
}

std::string RunConfig::canonical_text() const {
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

RunConfig RunConfig::preset(const std::string& name) {
    RunConfig c;
    auto common_stochastic = [&] {
        c.set("grid.d", "2");
        c.set("grid.n", "24");
        c.set("grid.length", "6.283185307179586");
        c.set("noise.s", "1.0");
        c.set("noise.nu", "0.3");
        c.set("envelope.alpha", "0.25");
        c.set("envelope.beta", "0.02");
        c.set("envelope.epsilon", "0.0");
        c.set("integrator.dt", "0.001");
        c.set("integrator.scheme", "etdrk2");
        c.set("integrator.mode", "ito");
        c.set("integrator.horizon", "5.0");
        c.set("output.stride", "100");
        c.set("output.audit", "on");
        c.set("seed", "1");
    };
    if (name == "sqg_random") {
        common_stochastic();
        c.set("kernel.preset", "riesz");
        c.set("kernel.gamma", "1.0");
        c.set("kernel.sign", "repulsive");
        c.set("coupling.type", "hamiltonian2d");
        c.set("datum.preset", "random");
        c.set("datum.mass", "0.0");
        c.set("datum.amplitude", "0.002");
        c.set("datum.radius", "0.8");
        c.set("datum.seed", "7");
        c.set("norms", "G:a=0,k=2,r=1,phi");
        c.set("audited_norm", "0");
    } else if (name == "aggregation_random") {
        common_stochastic();
        c.set("kernel.preset", "newtonian2d");
        c.set("kernel.sign", "attractive");
        c.set("coupling.type", "gradient");
        c.set("datum.preset", "random");
        c.set("datum.mass", "0.02");
        c.set("datum.amplitude", "0.002");
        c.set("datum.radius", "0.8");
        c.set("datum.seed", "11");
        c.set("norms", "X:a=0,sr=2,r=1,sq=2,q=1.5,phi");
        c.set("audited_norm", "0");
    } else if (name == "pks_blowup") {
        c.set("grid.d", "2");
        c.set("grid.n", "256");
        c.set("grid.length", "40.0");
        c.set("kernel.preset", "newtonian2d");
        c.set("kernel.sign", "attractive");
        c.set("coupling.type", "gradient");
        c.set("noise.s", "1.0");
        c.set("noise.nu", "1.0");  // unused by the deterministic dynamics
        c.set("integrator.dt", "0.01");
        c.set("integrator.scheme", "rk4");
        c.set("integrator.mode", "deterministic");
        c.set("integrator.horizon", "2.0");
        c.set("datum.preset", "gaussian");
        c.set("datum.mass", "1.0");
        c.set("datum.width", "1.0");
        c.set("output.stride", "10");
        c.set("output.second_moment", "on");
        c.set("expect", "horizon");
    } else if (name == "event_bench") {
        c.set("event.alpha", "1.0");
        c.set("event.beta", "1.0");
        c.set("event.nu", "1.4142135623730951");
        c.set("event.n_paths", "100000");
        c.set("event.dt", "0.001");
        c.set("event.horizon", "20.0");
        c.set("event.bridge", "on");
        c.set("seed", "20260809");
    } else if (name == "region_scan") {
        c.set("adm.d", "2");
        c.set("adm.s", "1.0");
        c.set("adm.r", "1.0");
        c.set("scan.axis1", "gamma:0.05:2.95:30");
        c.set("scan.axis2", "sigma:0.02:0.98:25");
    } else {
        throw ContractViolation("unknown preset " + name);
    }
    return c;
}

}  // namespace ascal
