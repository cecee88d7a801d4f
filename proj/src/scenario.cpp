#include "gphase/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gphase {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fmt_exact(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// half-integers as "3/2", "-1/2"; integers plain
std::string format_two_m(int two_m) {
    if (two_m % 2 == 0) return std::to_string(two_m / 2);
    return std::to_string(two_m) + "/2";
}

// ---------------------------------------------------------------------------
// config text format

const std::vector<std::string> kSections{"state", "circuit", "tolerances", "fringes"};

struct RawEntry {
    int line = 0;
    std::string value;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

class Raw {
public:
    void insert(int line, const std::string& key, std::string value) {
        if (kv_.count(key)) throw ConfigError(line, key, "duplicate key");
        kv_[key] = RawEntry{line, std::move(value)};
    }

    bool has_section(const std::string& section) const {
        const std::string prefix = section + ".";
        for (const auto& [k, v] : kv_)
            if (k.rfind(prefix, 0) == 0) return true;
        return false;
    }

    std::optional<RawEntry> take(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        RawEntry e = it->second;
        kv_.erase(it);
        return e;
    }

    void reject_leftovers() const {
        if (kv_.empty()) return;
        const auto& [key, entry] = *kv_.begin();
        throw ConfigError(entry.line, key, "unknown key");
    }

private:
    std::map<std::string, RawEntry> kv_;
};

double to_double(const RawEntry& e, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("");
        if (!std::isfinite(v)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(e.line, key, "expected a finite number, got '" + e.value + "'");
    }
}

long long to_int(const RawEntry& e, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(e.line, key, "expected an integer, got '" + e.value + "'");
    }
}

std::vector<double> to_doubles(const RawEntry& e, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(e.value);
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(e.line, key, "expected numbers, got '" + tok + "'");
        }
    }
    if (out.empty()) throw ConfigError(e.line, key, "expected at least one number");
    return out;
}

Axis to_axis(const RawEntry& e, const std::string& key) {
    const std::vector<double> v = to_doubles(e, key);
    if (v.size() != 3) throw ConfigError(e.line, key, "expected 3 components");
    try {
        return normalized(Vec3{v[0], v[1], v[2]});
    } catch (const std::exception&) {
        throw ConfigError(e.line, key, "axis must be a nonzero vector");
    }
}

}  // namespace

std::string ConfigError::format(int line, const std::string& key, const std::string& msg) {
    std::string s = "config error";
    if (line > 0) s += " at line " + std::to_string(line);
    if (!key.empty()) s += " (key '" + key + "')";
    return s + ": " + msg;
}

ScenarioConfig parse_config(const std::string& text) {
    Raw raw;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(lineno, "", "malformed section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
                throw ConfigError(lineno, section, "unknown section");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "", "expected 'key = value', got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "", "empty key");
        if (value.empty()) throw ConfigError(lineno, key, "empty value");
        raw.insert(lineno, section.empty() ? key : section + "." + key, value);
    }

    ScenarioConfig cfg;

    auto entry = raw.take("scenario");
    if (!entry) throw ConfigError(0, "scenario", "required key is missing");
    cfg.scenario = entry->value;
    const int scenario_line = entry->line;
    const auto& names = builtin_scenarios();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
        throw ConfigError(scenario_line, "scenario", "unknown scenario '" + cfg.scenario + "'");

    if ((entry = raw.take("two_j"))) {
        const long long v = to_int(*entry, "two_j");
        if (v < 0 || v > 15) throw ConfigError(entry->line, "two_j", "two_j must be in [0, 15]");
        cfg.two_j = static_cast<int>(v);
    }
    if ((entry = raw.take("samples"))) {
        const long long v = to_int(*entry, "samples");
        if (v < 2 || v > 10'000'000)
            throw ConfigError(entry->line, "samples", "samples must be in [2, 1e7]");
        cfg.samples = static_cast<int>(v);
    }
    if ((entry = raw.take("steps_per_edge"))) {
        const long long v = to_int(*entry, "steps_per_edge");
        if (v < 1 || v > 10'000'000)
            throw ConfigError(entry->line, "steps_per_edge", "steps_per_edge must be in [1, 1e7]");
        cfg.steps_per_edge = static_cast<int>(v);
    }
    if ((entry = raw.take("seed"))) {
        const long long v = to_int(*entry, "seed");
        if (v < 0) throw ConfigError(entry->line, "seed", "seed must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(v);
    }
    if ((entry = raw.take("output"))) cfg.output = entry->value;
    if ((entry = raw.take("tilt"))) cfg.tilt = to_double(*entry, "tilt");

    // [tolerances]
    if ((entry = raw.take("tolerances.herm_tol"))) cfg.tolerances.herm_tol = to_double(*entry, "tolerances.herm_tol");
    if ((entry = raw.take("tolerances.unit_tol"))) cfg.tolerances.unit_tol = to_double(*entry, "tolerances.unit_tol");
    if ((entry = raw.take("tolerances.sing_tol"))) cfg.tolerances.sing_tol = to_double(*entry, "tolerances.sing_tol");
    try {
        cfg.tolerances.validate();
    } catch (const std::exception& e) {
        throw ConfigError(0, "tolerances", e.what());
    }

    // [state]
    if (raw.has_section("state")) {
        StateSpec st;
        entry = raw.take("state.kind");
        if (!entry) throw ConfigError(0, "state.kind", "required key is missing");
        const int kind_line = entry->line;
        if (entry->value == "maximally_mixed") {
            st.kind = StateSpec::Kind::maximally_mixed;
        } else if (entry->value == "weights") {
            st.kind = StateSpec::Kind::weights;
            auto w = raw.take("state.weights");
            if (!w) throw ConfigError(kind_line, "state.weights", "required for kind = weights");
            st.weights = to_doubles(*w, "state.weights");
            if (static_cast<int>(st.weights.size()) != cfg.two_j + 1)
                throw ConfigError(w->line, "state.weights",
                                  "need exactly 2J+1 = " + std::to_string(cfg.two_j + 1) +
                                      " weights");
            double sum = 0;
            for (double x : st.weights) {
                if (!(x >= 0)) throw ConfigError(w->line, "state.weights", "negative weight");
                sum += x;
            }
            if (std::abs(sum - 1.0) >= 1e-12)
                throw ConfigError(w->line, "state.weights",
                                  "weights must sum to 1 (got " + fmt_g(sum) + ")");
        } else if (entry->value == "pure") {
            st.kind = StateSpec::Kind::pure;
            if (auto a = raw.take("state.axis")) st.axis = to_axis(*a, "state.axis");
            st.two_m = cfg.two_j;
            if (auto m = raw.take("state.two_m")) {
                const long long v = to_int(*m, "state.two_m");
                if (std::llabs(v) > cfg.two_j || ((v - cfg.two_j) % 2) != 0)
                    throw ConfigError(m->line, "state.two_m",
                                      "two_m must lie in {-two_j, ..., two_j} with the same parity");
                st.two_m = static_cast<int>(v);
            }
        } else {
            throw ConfigError(kind_line, "state.kind",
                              "expected maximally_mixed | weights | pure");
        }
        cfg.state = st;
    }

    // [circuit]
    if (raw.has_section("circuit")) {
        CircuitSpec cs;
        entry = raw.take("circuit.kind");
        if (!entry) throw ConfigError(0, "circuit.kind", "required key is missing");
        const int kind_line = entry->line;
        if (entry->value == "polygon") {
            cs.kind = CircuitSpec::Kind::polygon;
            auto vv = raw.take("circuit.vertices");
            if (!vv) throw ConfigError(kind_line, "circuit.vertices", "required for kind = polygon");
            const std::vector<double> flat = to_doubles(*vv, "circuit.vertices");
            if (flat.size() % 3 != 0 || flat.size() < 9)
                throw ConfigError(vv->line, "circuit.vertices",
                                  "expected 3N numbers for N >= 3 vertices");
            for (std::size_t i = 0; i < flat.size(); i += 3) {
                try {
                    cs.vertices.push_back(normalized(Vec3{flat[i], flat[i + 1], flat[i + 2]}));
                } catch (const std::exception&) {
                    throw ConfigError(vv->line, "circuit.vertices", "zero-length vertex");
                }
            }
            try {
                SphericalCircuit::make_polygon(cs.vertices);
            } catch (const std::exception& e) {
                throw ConfigError(vv->line, "circuit.vertices", e.what());
            }
        } else if (entry->value == "cap") {
            cs.kind = CircuitSpec::Kind::cap;
            if (auto a = raw.take("circuit.axis")) cs.axis = to_axis(*a, "circuit.axis");
            auto pa = raw.take("circuit.polar_angle");
            if (!pa) throw ConfigError(kind_line, "circuit.polar_angle", "required for kind = cap");
            cs.polar_angle = to_double(*pa, "circuit.polar_angle");
            if (auto o = raw.take("circuit.orientation")) {
                const long long v = to_int(*o, "circuit.orientation");
                if (v != 1 && v != -1)
                    throw ConfigError(o->line, "circuit.orientation", "expected 1 or -1");
                cs.orientation = static_cast<int>(v);
            }
        } else if (entry->value == "rotation") {
            cs.kind = CircuitSpec::Kind::rotation;
            if (auto a = raw.take("circuit.axis")) cs.axis = to_axis(*a, "circuit.axis");
            auto an = raw.take("circuit.angle");
            if (!an) throw ConfigError(kind_line, "circuit.angle", "required for kind = rotation");
            cs.angle = to_double(*an, "circuit.angle");
        } else {
            throw ConfigError(kind_line, "circuit.kind", "expected polygon | cap | rotation");
        }
        cfg.circuit = cs;
    }

    // [fringes]
    if ((entry = raw.take("fringes.chi_count"))) {
        const long long v = to_int(*entry, "fringes.chi_count");
        if (v < 4 || v > 1'000'000)
            throw ConfigError(entry->line, "fringes.chi_count", "chi_count must be in [4, 1e6]");
        cfg.fringes.chi_count = static_cast<int>(v);
    }
    if ((entry = raw.take("fringes.noise_sigma"))) {
        cfg.fringes.noise_sigma = to_double(*entry, "fringes.noise_sigma");
        if (cfg.fringes.noise_sigma < 0)
            throw ConfigError(entry->line, "fringes.noise_sigma", "must be >= 0");
    }
    if ((entry = raw.take("fringes.input_csv"))) cfg.fringes.input_csv = entry->value;
    if ((entry = raw.take("fringes.csv_output"))) cfg.fringes.csv_output = entry->value;

    raw.reject_leftovers();
    return cfg;
}

std::string serialize_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "scenario = " << c.scenario << "\n";
    out << "two_j = " << c.two_j << "\n";
    out << "samples = " << c.samples << "\n";
    out << "steps_per_edge = " << c.steps_per_edge << "\n";
    out << "seed = " << c.seed << "\n";
    out << "output = " << c.output << "\n";
    out << "tilt = " << fmt_exact(c.tilt) << "\n";

    if (c.state) {
        out << "\n[state]\n";
        switch (c.state->kind) {
            case StateSpec::Kind::maximally_mixed:
                out << "kind = maximally_mixed\n";
                break;
            case StateSpec::Kind::weights: {
                out << "kind = weights\nweights =";
                for (double w : c.state->weights) out << ' ' << fmt_exact(w);
                out << "\n";
                break;
            }
            case StateSpec::Kind::pure:
                out << "kind = pure\n";
                out << "axis = " << fmt_exact(c.state->axis.x) << ' ' << fmt_exact(c.state->axis.y)
                    << ' ' << fmt_exact(c.state->axis.z) << "\n";
                out << "two_m = " << c.state->two_m << "\n";
                break;
        }
    }

    if (c.circuit) {
        out << "\n[circuit]\n";
        switch (c.circuit->kind) {
            case CircuitSpec::Kind::polygon: {
                out << "kind = polygon\nvertices =";
                for (const Vec3& v : c.circuit->vertices)
                    out << ' ' << fmt_exact(v.x) << ' ' << fmt_exact(v.y) << ' ' << fmt_exact(v.z);
                out << "\n";
                break;
            }
            case CircuitSpec::Kind::cap:
                out << "kind = cap\n";
                out << "axis = " << fmt_exact(c.circuit->axis.x) << ' '
                    << fmt_exact(c.circuit->axis.y) << ' ' << fmt_exact(c.circuit->axis.z) << "\n";
                out << "polar_angle = " << fmt_exact(c.circuit->polar_angle) << "\n";
                out << "orientation = " << c.circuit->orientation << "\n";
                break;
            case CircuitSpec::Kind::rotation:
                out << "kind = rotation\n";
                out << "axis = " << fmt_exact(c.circuit->axis.x) << ' '
                    << fmt_exact(c.circuit->axis.y) << ' ' << fmt_exact(c.circuit->axis.z) << "\n";
                out << "angle = " << fmt_exact(c.circuit->angle) << "\n";
                break;
        }
    }

    out << "\n[tolerances]\n";
    out << "herm_tol = " << fmt_exact(c.tolerances.herm_tol) << "\n";
    out << "unit_tol = " << fmt_exact(c.tolerances.unit_tol) << "\n";
    out << "sing_tol = " << fmt_exact(c.tolerances.sing_tol) << "\n";

    out << "\n[fringes]\n";
    out << "chi_count = " << c.fringes.chi_count << "\n";
    out << "noise_sigma = " << fmt_exact(c.fringes.noise_sigma) << "\n";
    if (!c.fringes.input_csv.empty()) out << "input_csv = " << c.fringes.input_csv << "\n";
    out << "csv_output = " << c.fringes.csv_output << "\n";

    return out.str();
}

void degrees_to_radians(ScenarioConfig& c) {
    constexpr double f = kPi / 180.0;
    c.tilt *= f;
    if (c.circuit) {
        c.circuit->polar_angle *= f;
        c.circuit->angle *= f;
    }
}

// ---------------------------------------------------------------------------
// report rendering

std::string PhaseReport::to_text() const {
    std::ostringstream out;
    out << "scenario = " << scenario << "\n";
    if (phase_mod_2pi) out << "phase_mod_2pi = " << fmt_g(*phase_mod_2pi) << "\n";
    if (visibility) out << "visibility = " << fmt_g(*visibility) << "\n";
    if (singular) out << "singular = " << (*singular ? "true" : "false") << "\n";
    if (unwrapped_final) out << "unwrapped_final = " << fmt_g(*unwrapped_final) << "\n";
    if (winding) {
        out << "winding = " << *winding << "\n";
        out << "singular_crossings = ";
        if (singular_crossings.empty()) {
            out << "none";
        } else {
            for (std::size_t i = 0; i < singular_crossings.size(); ++i)
                out << (i ? "," : "") << fmt_g(singular_crossings[i]);
        }
        out << "\n";
    }
    if (alpha) out << "alpha = " << fmt_g(*alpha) << "\n";
    for (const BetaEntry& b : betas) {
        const std::string label = format_two_m(b.two_m);
        out << "beta[" << label << "] = " << fmt_g(b.beta) << "\n";
        out << "expected[" << label << "] = " << fmt_g(b.expected) << "\n";
        out << "error[" << label << "] = " << fmt_g(b.error) << "\n";
        if (b.j_est) out << "j_est[" << label << "] = " << fmt_g(*b.j_est) << "\n";
    }
    for (const auto& [k, v] : extra) out << k << " = " << v << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// scenarios

const std::vector<std::string>& builtin_scenarios() {
    static const std::vector<std::string> names{"neutron-2pi", "holonomy-sweep",
                                                "singularity-loop", "spin-estimate", "fringes"};
    return names;
}

const std::map<std::string, std::string>& scenario_descriptions() {
    static const std::map<std::string, std::string> desc{
        {"neutron-2pi",
         "unpolarized spin-1/2 beam, one arm rotated by 2pi: phase pi at full visibility"},
        {"holonomy-sweep",
         "parallel transport around a circuit: beta_m vs -m*alpha for every weight m"},
        {"singularity-loop",
         "two closed qubit evolutions, one encircling the visibility zero: same phase mod 2pi, "
         "windings differ by 1"},
        {"spin-estimate", "infinitesimal cap circuit: recover m = beta/alpha on the n = 0 branch"},
        {"fringes", "synthesize a fringe pattern (or read one from CSV) and refit phase/visibility"},
    };
    return desc;
}

namespace {

DensityMatrix resolve_state(const ScenarioConfig& cfg, const SpinSystem& s,
                            const StateSpec& fallback) {
    const StateSpec& st = cfg.state ? *cfg.state : fallback;
    switch (st.kind) {
        case StateSpec::Kind::maximally_mixed:
            return maximally_mixed(s.dim());
        case StateSpec::Kind::weights:
            return diagonal_state(s, st.weights);
        case StateSpec::Kind::pure:
            return pure_state_along(s, st.axis, st.two_m);
    }
    throw std::logic_error("unreachable");
}

// Evolution U(t_k) = exp(-i angle(t_k) n.J) sampled on a uniform t grid.
std::vector<EvolutionSample> sampled_rotation(const SpinSystem& s, const Axis& axis,
                                              const std::vector<double>& angles) {
    std::vector<EvolutionSample> ev;
    ev.reserve(angles.size());
    const double denom = static_cast<double>(angles.size()) - 1.0;
    for (std::size_t k = 0; k < angles.size(); ++k)
        ev.push_back({static_cast<double>(k) / denom, rotation_unitary(s, axis, angles[k])});
    return ev;
}

void fill_track(PhaseReport& rep, const PhaseTrace& trace) {
    rep.unwrapped_final = trace.samples.back().unwrapped_phase;
    rep.winding = trace.winding;
    rep.singular_crossings = trace.singular_crossings;
}

PhaseReport scenario_neutron(const ScenarioConfig& cfg) {
    const SpinSystem s = build_spin(cfg.two_j);
    const DensityMatrix rho =
        resolve_state(cfg, s, StateSpec{StateSpec::Kind::maximally_mixed, {}, {}, 0});

    Axis axis{0, 0, 1};
    double angle = 2.0 * kPi;
    if (cfg.circuit) {
        if (cfg.circuit->kind != CircuitSpec::Kind::rotation)
            throw ConfigError(0, "circuit.kind", "neutron-2pi takes a rotation circuit");
        axis = cfg.circuit->axis;
        angle = cfg.circuit->angle;
    }

    std::vector<double> angles(cfg.samples);
    for (int k = 0; k < cfg.samples; ++k) angles[k] = angle * k / (cfg.samples - 1);
    const std::vector<EvolutionSample> ev = sampled_rotation(s, axis, angles);
    const PhaseTrace trace = track_phase(ev, rho, cfg.tolerances);
    const PhaseResult pr = trace_phase(ev.back().u, rho, cfg.tolerances);

    PhaseReport rep;
    rep.scenario = cfg.scenario;
    rep.phase_mod_2pi = pr.phase;
    rep.visibility = pr.visibility;
    rep.singular = pr.singular;
    fill_track(rep, trace);
    rep.traces.emplace_back("rotation", trace);
    return rep;
}

SphericalCircuit circuit_from_spec(const CircuitSpec& cs) {
    if (cs.kind == CircuitSpec::Kind::polygon) return SphericalCircuit::make_polygon(cs.vertices);
    if (cs.kind == CircuitSpec::Kind::cap)
        return SphericalCircuit::make_cap(cs.axis, cs.polar_angle, cs.orientation);
    throw ConfigError(0, "circuit.kind", "this scenario needs a polygon or cap circuit");
}

SphericalCircuit octant_circuit() {
    return SphericalCircuit::make_polygon({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

PhaseReport scenario_holonomy_sweep(const ScenarioConfig& cfg) {
    const SpinSystem s = build_spin(cfg.two_j);

    // one configured circuit, or a built-in ladder spanning a range of alpha
    std::vector<SphericalCircuit> circuits;
    if (cfg.circuit) {
        circuits.push_back(circuit_from_spec(*cfg.circuit));
    } else {
        circuits.push_back(octant_circuit());
        for (double frac : {1.0 / 6, 1.0 / 3, 0.5, 2.0 / 3, 5.0 / 6})
            circuits.push_back(SphericalCircuit::make_cap(Axis{0, 0, 1}, kPi * frac, +1));
    }

    PhaseReport rep;
    rep.scenario = cfg.scenario;

    for (std::size_t ci = 0; ci < circuits.size(); ++ci) {
        const std::vector<Vec3> path = discretize(circuits[ci], cfg.steps_per_edge);
        const ComplexMatrix u = holonomy_unitary(s, path);
        const SolidAngle alpha = solid_angle(circuits[ci]);

        std::vector<double> betas;
        for (int two_m : two_m_values(cfg.two_j))
            betas.push_back(
                transported_phase(s, u, path.front(), two_m, cfg.tolerances.sing_tol));

        if (ci == 0) {
            rep.alpha = alpha.alpha;
            for (std::size_t k = 0; k < betas.size(); ++k) {
                const int two_m = two_m_values(cfg.two_j)[k];
                const double expected = principal_phase(-0.5 * two_m * alpha.alpha);
                rep.betas.push_back(
                    {two_m, betas[k], expected, phase_distance(betas[k], expected), std::nullopt});
            }
            // with an explicit spectrum, contrast the spectral combination
            // against the direct trace of the holonomy unitary
            if (cfg.state && cfg.state->kind == StateSpec::Kind::weights) {
                const PhaseResult spectral =
                    mixed_phase_from_spectrum(cfg.state->weights, betas, cfg.tolerances);
                const DensityMatrix rho =
                    diagonal_state_along(s, path.front(), cfg.state->weights);
                const PhaseResult direct = trace_phase(u, rho, cfg.tolerances);
                rep.phase_mod_2pi = direct.phase;
                rep.visibility = direct.visibility;
                rep.singular = direct.singular;
                rep.extra.emplace_back("mixed_phase_spectral", fmt_g(spectral.phase));
                rep.extra.emplace_back("mixed_visibility_spectral", fmt_g(spectral.visibility));
                rep.extra.emplace_back("mixed_phase_agreement",
                                       fmt_g(phase_distance(spectral.phase, direct.phase)));
            }
        } else {
            const std::string tag = "circuit[" + std::to_string(ci) + "].";
            rep.extra.emplace_back(tag + "alpha", fmt_g(alpha.alpha));
            for (std::size_t k = 0; k < betas.size(); ++k) {
                const int two_m = two_m_values(cfg.two_j)[k];
                const std::string label = "[" + format_two_m(two_m) + "]";
                rep.extra.emplace_back(tag + "beta" + label, fmt_g(betas[k]));
                rep.extra.emplace_back(
                    tag + "error" + label,
                    fmt_g(phase_distance(betas[k],
                                         principal_phase(-0.5 * two_m * alpha.alpha))));
            }
        }
    }
    return rep;
}

PhaseReport scenario_singularity_loop(const ScenarioConfig& cfg) {
    if (cfg.two_j != 1)
        throw ConfigError(0, "two_j", "singularity-loop is a qubit scenario (two_j = 1)");
    if (cfg.samples < 64)
        throw ConfigError(0, "samples", "singularity-loop needs samples >= 64");
    if (std::abs(std::cos(cfg.tilt)) < 1e-6)
        throw ConfigError(0, "tilt",
                          "tilt too close to pi/2: the loop would pass through the singularity");

    const SpinSystem s = build_spin(1);
    const DensityMatrix rho = pure_state_along(s, Axis{0, 0, 1}, 1);
    const Axis tilted = normalized(Vec3{std::sin(cfg.tilt), 0.0, std::cos(cfg.tilt)});

    // Closed in parameter space: both loops start and end at the identity.
    // "around" sweeps the rotation angle through a full 4pi, so Tr(U(t) rho)
    // traces its ellipse once around the singular point z = 0; "beside" goes
    // out to 2pi and retraces, enclosing nothing.
    const int n = cfg.samples;
    std::vector<double> around(n), beside(n);
    for (int k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / (n - 1);
        around[k] = 4.0 * kPi * t;
        beside[k] = kPi * (1.0 - std::cos(2.0 * kPi * t));
    }

    const std::vector<EvolutionSample> ev_around = sampled_rotation(s, tilted, around);
    const std::vector<EvolutionSample> ev_beside = sampled_rotation(s, tilted, beside);
    const PhaseTrace tr_around = track_phase(ev_around, rho, cfg.tolerances);
    const PhaseTrace tr_beside = track_phase(ev_beside, rho, cfg.tolerances);
    const PhaseResult pr_around = trace_phase(ev_around.back().u, rho, cfg.tolerances);
    const PhaseResult pr_beside = trace_phase(ev_beside.back().u, rho, cfg.tolerances);

    PhaseReport rep;
    rep.scenario = cfg.scenario;
    rep.phase_mod_2pi = pr_around.phase;
    rep.visibility = pr_around.visibility;
    rep.singular = pr_around.singular;
    fill_track(rep, tr_around);

    rep.extra.emplace_back("beside.phase_mod_2pi", fmt_g(pr_beside.phase));
    rep.extra.emplace_back("beside.visibility", fmt_g(pr_beside.visibility));
    rep.extra.emplace_back("beside.unwrapped_final",
                           fmt_g(tr_beside.samples.back().unwrapped_phase));
    rep.extra.emplace_back("beside.winding", std::to_string(tr_beside.winding));
    rep.extra.emplace_back("winding_difference",
                           std::to_string(std::labs(tr_around.winding - tr_beside.winding)));
    rep.extra.emplace_back("final_phase_difference",
                           fmt_g(phase_distance(pr_around.phase, pr_beside.phase)));
    rep.extra.emplace_back("min_visibility_around", fmt_g([&] {
                               double v = 1.0;
                               for (const PhaseSample& ps : tr_around.samples)
                                   v = std::min(v, ps.visibility);
                               return v;
                           }()));

    rep.traces.emplace_back("around", tr_around);
    rep.traces.emplace_back("beside", tr_beside);
    return rep;
}

PhaseReport scenario_spin_estimate(const ScenarioConfig& cfg) {
    const SpinSystem s = build_spin(cfg.two_j);

    SphericalCircuit circuit = [&] {
        if (!cfg.circuit) {
            // default: cap enclosing alpha_small = 1e-3, traversed clockwise so
            // the n = 0 branch pairs the infinitesimal patch with +m beta
            const double alpha_small = 1e-3;
            const double polar = std::acos(1.0 - alpha_small / (2.0 * kPi));
            return SphericalCircuit::make_cap(Axis{0, 0, 1}, polar, -1);
        }
        if (cfg.circuit->kind != CircuitSpec::Kind::cap)
            throw ConfigError(0, "circuit.kind", "spin-estimate takes a cap circuit");
        return circuit_from_spec(*cfg.circuit);
    }();

    const SolidAngle oriented = solid_angle(circuit);
    const SolidAngle small_patch =
        circuit.cap_orientation > 0 ? oriented : complementary(oriented);
    const double sign = circuit.cap_orientation > 0 ? -1.0 : 1.0;  // beta ~ sign * m * alpha

    const std::vector<Vec3> path = discretize(circuit, cfg.steps_per_edge);
    const ComplexMatrix u = holonomy_unitary(s, path);

    PhaseReport rep;
    rep.scenario = cfg.scenario;
    rep.alpha = small_patch.alpha;
    for (int two_m : two_m_values(cfg.two_j)) {
        const double beta = transported_phase(s, u, path.front(), two_m, cfg.tolerances.sing_tol);
        const double j_est = estimate_spin(beta, small_patch);
        const double expected = sign * 0.5 * two_m * small_patch.alpha;
        rep.betas.push_back(
            {two_m, beta, expected, phase_distance(beta, expected), sign * j_est});
    }
    return rep;
}

PhaseReport scenario_fringes(const ScenarioConfig& cfg, const std::string& out_dir) {
    PhaseReport rep;
    rep.scenario = cfg.scenario;

    std::vector<FringeSample> samples;
    if (!cfg.fringes.input_csv.empty()) {
        std::ifstream in(cfg.fringes.input_csv);
        if (!in) throw ConfigError(0, "fringes.input_csv",
                                   "cannot open '" + cfg.fringes.input_csv + "'");
        samples = read_fringe_csv(in);
        rep.extra.emplace_back("input_csv", cfg.fringes.input_csv);
    } else {
        const SpinSystem s = build_spin(cfg.two_j);
        const DensityMatrix rho =
            resolve_state(cfg, s, StateSpec{StateSpec::Kind::maximally_mixed, {}, {}, 0});
        ComplexMatrix u = ComplexMatrix::identity(s.dim());
        if (cfg.circuit) {
            if (cfg.circuit->kind == CircuitSpec::Kind::rotation) {
                u = rotation_unitary(s, cfg.circuit->axis, cfg.circuit->angle);
            } else {
                const SphericalCircuit c = circuit_from_spec(*cfg.circuit);
                u = holonomy_unitary(s, discretize(c, cfg.steps_per_edge));
            }
        }
        const PhaseResult truth = trace_phase(u, rho, cfg.tolerances);
        const std::vector<double> chis = uniform_chi_grid(cfg.fringes.chi_count);
        samples = synthesize_fringes(u, rho, chis, cfg.fringes.noise_sigma, cfg.seed,
                                     cfg.tolerances);
        rep.extra.emplace_back("true_phase", fmt_g(truth.phase));
        rep.extra.emplace_back("true_visibility", fmt_g(truth.visibility));
    }

    const FringeFit fit = fit_fringes(samples, cfg.tolerances.sing_tol);
    rep.phase_mod_2pi = fit.phase;
    rep.visibility = fit.visibility;
    rep.singular = fit.visibility < cfg.tolerances.sing_tol;
    rep.extra.emplace_back("fit_residual", fmt_g(fit.residual));

    if (!cfg.fringes.csv_output.empty()) {
        const std::filesystem::path csv_path =
            std::filesystem::path(out_dir) / cfg.fringes.csv_output;
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path.string());
        write_fringe_csv(out, samples);
        rep.extra.emplace_back("csv", cfg.fringes.csv_output);
    }
    return rep;
}

}  // namespace

PhaseReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
    cfg.tolerances.validate();
    const auto& names = builtin_scenarios();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
        throw ConfigError(0, "scenario", "unknown scenario '" + cfg.scenario + "'");

    std::filesystem::create_directories(out_dir);

    PhaseReport rep;
    try {
        if (cfg.scenario == "neutron-2pi") rep = scenario_neutron(cfg);
        else if (cfg.scenario == "holonomy-sweep") rep = scenario_holonomy_sweep(cfg);
        else if (cfg.scenario == "singularity-loop") rep = scenario_singularity_loop(cfg);
        else if (cfg.scenario == "spin-estimate") rep = scenario_spin_estimate(cfg);
        else rep = scenario_fringes(cfg, out_dir);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {  // surface module errors with scenario context
        throw std::runtime_error("scenario '" + cfg.scenario + "': " + e.what());
    }

    if (!cfg.output.empty()) {
        const std::filesystem::path report_path = std::filesystem::path(out_dir) / cfg.output;
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write " + report_path.string());
        out << rep.to_text();
    }
    return rep;
}

}  // namespace gphase
