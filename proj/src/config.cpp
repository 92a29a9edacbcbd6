#include "arclab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "arclab/errors.hpp"
#include "arclab/version.hpp"

namespace arclab {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& block,
                         const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in block '" + block + "'");
    }
}

double get_number(const json& obj, const std::string& block, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + key + "' in block '" + block + "'");
    if (!obj[key].is_number())
        throw ConfigError("key '" + key + "' in block '" + block + "' must be a number");
    return obj[key].get<double>();
}

double get_positive(const json& obj, const std::string& block, const std::string& key) {
    const double v = get_number(obj, block, key);
    if (!(v > 0.0))
        throw ConfigError("key '" + key + "' in block '" + block + "' must be positive");
    return v;
}

double get_number_or(const json& obj, const std::string& block, const std::string& key,
                     double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj, block, key);
}

Vec2 get_vec2(const json& obj, const std::string& block, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + key + "' in block '" + block + "'");
    const json& a = obj[key];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        throw ConfigError("key '" + key + "' in block '" + block +
                          "' must be an array of two numbers");
    return {a[0].get<double>(), a[1].get<double>()};
}

DomainBlock parse_domain(const json& obj) {
    reject_unknown_keys(obj, "domain", {"shape", "x0", "boundary_resolution"});
    if (!obj.contains("shape")) throw ConfigError("missing key 'shape' in block 'domain'");
    const json& sh = obj["shape"];
    if (!sh.is_object() || !sh.contains("type"))
        throw ConfigError("domain.shape must be an object with a 'type'");
    const std::string type = sh["type"].get<std::string>();

    DomainBlock block;
    if (type == "disk") {
        reject_unknown_keys(sh, "domain.shape", {"type", "radius"});
        block.shape = DiskSpec{get_positive(sh, "domain.shape", "radius")};
    } else if (type == "rectangle") {
        reject_unknown_keys(sh, "domain.shape", {"type", "a", "b"});
        block.shape = RectangleSpec{get_positive(sh, "domain.shape", "a"),
                                    get_positive(sh, "domain.shape", "b")};
    } else if (type == "polygon") {
        reject_unknown_keys(sh, "domain.shape", {"type", "vertices"});
        if (!sh.contains("vertices") || !sh["vertices"].is_array())
            throw ConfigError("polygon shape needs a 'vertices' array");
        PolygonSpec poly;
        for (const auto& v : sh["vertices"]) {
            if (!v.is_array() || v.size() != 2)
                throw ConfigError("polygon vertices must be [x, y] pairs");
            poly.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        block.shape = std::move(poly);
    } else {
        throw ConfigError("unknown shape type '" + type + "' (disk, rectangle, polygon)");
    }
    block.x0 = get_vec2(obj, "domain", "x0");
    block.boundary_resolution =
        static_cast<int>(get_number_or(obj, "domain", "boundary_resolution", 256));
    if (block.boundary_resolution < 4)
        throw ConfigError("domain.boundary_resolution must be at least 4");
    return block;
}

GridBlock parse_grid(const json& obj) {
    reject_unknown_keys(obj, "grid", {"nx", "ny"});
    GridBlock g;
    g.nx = static_cast<int>(get_positive(obj, "grid", "nx"));
    g.ny = static_cast<int>(get_positive(obj, "grid", "ny"));
    return g;
}

ModelParams parse_params(const json& obj) {
    reject_unknown_keys(obj, "params", {"alpha", "beta", "gamma", "delta", "chi", "xi"});
    ModelParams p;
    p.alpha = get_positive(obj, "params", "alpha");
    p.beta = get_positive(obj, "params", "beta");
    p.gamma = get_positive(obj, "params", "gamma");
    p.delta = get_positive(obj, "params", "delta");
    p.chi = get_positive(obj, "params", "chi");
    p.xi = get_positive(obj, "params", "xi");
    return p;
}

InitialSpec parse_initial(const json& obj) {
    if (!obj.contains("kind")) throw ConfigError("missing key 'kind' in block 'initial'");
    const std::string kind = obj["kind"].get<std::string>();
    if (kind == "constant") {
        reject_unknown_keys(obj, "initial", {"kind", "value"});
        return ConstantIC{get_number(obj, "initial", "value")};
    }
    if (kind == "gaussian") {
        reject_unknown_keys(obj, "initial", {"kind", "center", "width", "mass"});
        GaussianIC ic;
        ic.center = get_vec2(obj, "initial", "center");
        ic.width = get_positive(obj, "initial", "width");
        ic.mass = get_positive(obj, "initial", "mass");
        return ic;
    }
    if (kind == "annulus") {
        reject_unknown_keys(obj, "initial", {"kind", "center", "radius", "width", "mass"});
        AnnulusIC ic;
        ic.center = get_vec2(obj, "initial", "center");
        ic.radius = get_positive(obj, "initial", "radius");
        ic.width = get_positive(obj, "initial", "width");
        ic.mass = get_positive(obj, "initial", "mass");
        return ic;
    }
    throw ConfigError("unknown initial kind '" + kind + "' (constant, gaussian, annulus)");
}

TimeControls parse_time(const json& obj) {
    reject_unknown_keys(obj, "time",
                        {"dt0", "t_end", "output_interval", "blowup_umax_factor",
                         "blowup_energy_factor", "cfl", "dt_min_factor"});
    TimeControls tc;
    tc.dt0 = get_positive(obj, "time", "dt0");
    tc.t_end = get_positive(obj, "time", "t_end");
    tc.output_interval = get_positive(obj, "time", "output_interval");
    tc.blowup_umax_factor = get_number_or(obj, "time", "blowup_umax_factor", 1e6);
    tc.blowup_energy_factor = get_number_or(obj, "time", "blowup_energy_factor", 1e8);
    tc.cfl = get_number_or(obj, "time", "cfl", 0.4);
    tc.dt_min_factor = get_number_or(obj, "time", "dt_min_factor", 1e-10);
    if (!(tc.cfl > 0.0)) throw ConfigError("time.cfl must be positive");
    return tc;
}

CtildeBlock parse_ctilde(const json& obj) {
    reject_unknown_keys(obj, "ctilde", {"mode", "value", "n_trials", "seed", "safety_factor"});
    if (!obj.contains("mode")) throw ConfigError("missing key 'mode' in block 'ctilde'");
    const std::string mode = obj["mode"].get<std::string>();
    CtildeBlock block;
    if (mode == "user") {
        block.mode = CtildeMode::user;
        block.value = get_number(obj, "ctilde", "value");
        if (block.value < 0.0) throw ConfigError("ctilde.value must be nonnegative");
    } else if (mode == "estimate") {
        block.mode = CtildeMode::estimate;
        block.n_trials = static_cast<int>(get_number_or(obj, "ctilde", "n_trials", 64));
        if (block.n_trials < 1) throw ConfigError("ctilde.n_trials must be at least 1");
        block.seed = static_cast<uint64_t>(get_number_or(obj, "ctilde", "seed", 1));
        block.safety_factor = get_number_or(obj, "ctilde", "safety_factor", 2.0);
        if (!(block.safety_factor >= 1.0))
            throw ConfigError("ctilde.safety_factor must be at least 1");
    } else {
        throw ConfigError("unknown ctilde mode '" + mode + "' (user, estimate)");
    }
    return block;
}

BenchBlock parse_bench(const json& obj) {
    reject_unknown_keys(obj, "bench", {"n_trials", "seed"});
    BenchBlock b;
    b.n_trials = static_cast<int>(get_number_or(obj, "bench", "n_trials", 100));
    if (b.n_trials < 1) throw ConfigError("bench.n_trials must be at least 1");
    b.seed = static_cast<uint64_t>(get_number_or(obj, "bench", "seed", 1));
    return b;
}

OutputsBlock parse_outputs(const json& obj) {
    reject_unknown_keys(obj, "outputs",
                        {"dir", "trajectory", "report", "bench", "snapshot_times"});
    OutputsBlock o;
    if (obj.contains("dir")) o.dir = obj["dir"].get<std::string>();
    if (obj.contains("trajectory")) o.trajectory = obj["trajectory"].get<std::string>();
    if (obj.contains("report")) o.report = obj["report"].get<std::string>();
    if (obj.contains("bench")) o.bench = obj["bench"].get<std::string>();
    if (obj.contains("snapshot_times"))
        for (const auto& t : obj["snapshot_times"]) o.snapshot_times.push_back(t.get<double>());
    return o;
}

EllipticOptions parse_solver(const json& obj) {
    reject_unknown_keys(obj, "solver", {"backend", "rtol", "max_iter_factor"});
    EllipticOptions opts;
    if (obj.contains("backend")) opts.backend = parse_backend(obj["backend"].get<std::string>());
    opts.rtol = get_number_or(obj, "solver", "rtol", 1e-10);
    if (!(opts.rtol > 0.0)) throw ConfigError("solver.rtol must be positive");
    opts.max_iter_factor = static_cast<int>(get_number_or(obj, "solver", "max_iter_factor", 50));
    return opts;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text, const std::string& path) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(root, "<root>",
                        {"domain", "grid", "params", "initial", "time", "ctilde", "bench",
                         "outputs", "solver"});

    ExperimentConfig cfg;
    cfg.path = path;
    cfg.config_hash = fnv1a_hash(json_text);
    if (root.contains("domain")) cfg.domain = parse_domain(root["domain"]);
    if (root.contains("grid")) cfg.grid = parse_grid(root["grid"]);
    if (root.contains("params")) cfg.params = parse_params(root["params"]);
    if (root.contains("initial")) cfg.initial = parse_initial(root["initial"]);
    if (root.contains("time")) cfg.time = parse_time(root["time"]);
    if (root.contains("ctilde")) cfg.ctilde = parse_ctilde(root["ctilde"]);
    if (root.contains("bench")) cfg.bench = parse_bench(root["bench"]);
    if (root.contains("outputs")) cfg.outputs = parse_outputs(root["outputs"]);
    if (root.contains("solver")) cfg.elliptic = parse_solver(root["solver"]);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

namespace {

template <typename T>
const T& require_block(const std::optional<T>& block, const char* name) {
    if (!block) throw ConfigError(std::string("missing block '") + name + "' in config");
    return *block;
}

} // namespace

const DomainBlock& require_domain(const ExperimentConfig& c) { return require_block(c.domain, "domain"); }
const GridBlock& require_grid(const ExperimentConfig& c) { return require_block(c.grid, "grid"); }
const ModelParams& require_params(const ExperimentConfig& c) { return require_block(c.params, "params"); }
const InitialSpec& require_initial(const ExperimentConfig& c) { return require_block(c.initial, "initial"); }
const TimeControls& require_time(const ExperimentConfig& c) { return require_block(c.time, "time"); }
const CtildeBlock& require_ctilde(const ExperimentConfig& c) { return require_block(c.ctilde, "ctilde"); }

Grid make_grid(const ExperimentConfig& config) {
    const DomainBlock& domain = require_domain(config);
    const GridBlock& grid = require_grid(config);
    return Grid(shape_bounding_box(domain.shape), grid.nx, grid.ny);
}

std::string output_header_comment(uint64_t config_hash) {
    std::ostringstream out;
    out << "# tool=" << kToolName << " version=" << kToolVersion << " config_hash=" << std::hex
        << "0x" << config_hash << std::dec << "\n";
    return out.str();
}

} // namespace arclab
