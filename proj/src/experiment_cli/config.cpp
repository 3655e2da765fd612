#include "fnls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "fnls/errors.hpp"

namespace fnls {

ConfigError::ConfigError(std::vector<std::string> msgs)
    : Error([&] {
          std::string s;
          for (const auto& m : msgs) s += (s.empty() ? "" : "\n") + m;
          return s.empty() ? std::string("invalid configuration") : s;
      }()),
      messages(std::move(msgs)) {}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::GroundState: return "groundstate";
        case Scenario::Evolve: return "evolve";
        case Scenario::Verify: return "verify";
        case Scenario::Concentrate: return "concentrate";
        case Scenario::Thresholds: return "thresholds";
    }
    return "?";
}

std::optional<Scenario> parse_scenario(const std::string& s) {
    if (s == "groundstate") return Scenario::GroundState;
    if (s == "evolve") return Scenario::Evolve;
    if (s == "verify" || s == "verify-inequalities") return Scenario::Verify;
    if (s == "concentrate" || s == "concentration-study") return Scenario::Concentrate;
    if (s == "thresholds") return Scenario::Thresholds;
    return std::nullopt;
}

std::string initial_data_name(InitialData::Kind k) {
    switch (k) {
        case InitialData::Kind::Gaussian: return "gaussian";
        case InitialData::Kind::ScaledGroundState: return "scaled_groundstate";
        case InitialData::Kind::ChirpedGaussian: return "chirped_gaussian";
        case InitialData::Kind::FromCheckpoint: return "from_checkpoint";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

// strips a trailing comment outside quotes
std::string strip_comment(const std::string& line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

std::optional<double> to_double(const std::string& s) {
    double v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) {
        if (s == "inf" || s == "+inf") return HUGE_VAL;
        return std::nullopt;
    }
    return v;
}

template <class I>
std::optional<I> to_int(const std::string& s) {
    I v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) return std::nullopt;
    return v;
}

std::optional<bool> to_bool(const std::string& s) {
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    return std::nullopt;
}

bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

struct Ctx {
    ScenarioConfig& cfg;
    std::vector<std::string>& errors;
    std::string base_dir;
    int line = 0;

    void err(const std::string& m) { errors.push_back("line " + std::to_string(line) + ": " + m); }

    bool real(const std::string& key, const std::string& v, double& out) {
        auto x = to_double(v);
        if (!x) {
            err(key + ": expected a number, got '" + v + "'");
            return false;
        }
        out = *x;
        return true;
    }
    template <class I>
    bool integer(const std::string& key, const std::string& v, I& out) {
        auto x = to_int<I>(v);
        if (!x) {
            err(key + ": expected an integer, got '" + v + "'");
            return false;
        }
        out = *x;
        return true;
    }
    bool boolean(const std::string& key, const std::string& v, bool& out) {
        auto x = to_bool(v);
        if (!x) {
            err(key + ": expected true or false, got '" + v + "'");
            return false;
        }
        out = *x;
        return true;
    }
    // positive finite real
    void positive(const std::string& key, const std::string& v, double& out) {
        if (real(key, v, out) && !(out > 0.0 && std::isfinite(out))) err(key + " must be positive");
    }
};

using Handler = std::function<void(Ctx&, const std::string& key, const std::string& v)>;

void set_initial_call(Ctx& c, const std::string& v) {
    // kind(arg, ...)
    const auto open = v.find('(');
    std::string kind = trim(v.substr(0, open));
    std::vector<std::string> args;
    if (open != std::string::npos) {
        const auto close = v.rfind(')');
        if (close == std::string::npos || close < open) {
            c.err("initial_data: missing ')'");
            return;
        }
        std::stringstream ss(v.substr(open + 1, close - open - 1));
        std::string a;
        while (std::getline(ss, a, ',')) {
            a = trim(a);
            if (!a.empty()) args.push_back(a);
        }
    }
    auto& in = c.cfg.initial;
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
            c.err("initial_data: " + kind + " takes " + std::to_string(lo) +
                  (lo == hi ? "" : " to " + std::to_string(hi)) + " arguments");
            return false;
        }
        return true;
    };
    if (kind == "gaussian") {
        in.kind = InitialData::Kind::Gaussian;
        if (!need(0, 2)) return;
        if (args.size() > 0) c.positive("initial_data.sigma", args[0], in.sigma);
        if (args.size() > 1) c.real("initial_data.amplitude", args[1], in.amplitude);
    } else if (kind == "chirped_gaussian") {
        in.kind = InitialData::Kind::ChirpedGaussian;
        if (!need(0, 3)) return;
        if (args.size() > 0) c.positive("initial_data.sigma", args[0], in.sigma);
        if (args.size() > 1) c.real("initial_data.amplitude", args[1], in.amplitude);
        if (args.size() > 2) c.real("initial_data.chirp_b", args[2], in.chirp_b);
    } else if (kind == "scaled_groundstate") {
        in.kind = InitialData::Kind::ScaledGroundState;
        if (!need(0, 1)) return;
        if (args.size() > 0) c.positive("initial_data.factor", args[0], in.factor);
    } else if (kind == "from_checkpoint") {
        in.kind = InitialData::Kind::FromCheckpoint;
        if (!need(0, 1)) return;
        if (args.size() > 0) in.path = unquote(args[0]);
    } else {
        c.err("initial_data: unknown kind '" + kind +
              "' (gaussian, scaled_groundstate, chirped_gaussian, from_checkpoint)");
    }
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h = {
        {"scenario",
         [](Ctx& c, const std::string&, const std::string& v) {
             auto s = parse_scenario(v);
             if (!s) c.err("scenario: unknown scenario '" + v + "'");
             else c.cfg.scenario = *s;
         }},
        {"seed", [](Ctx& c, const std::string& k, const std::string& v) { c.integer(k, v, c.cfg.seed); }},
        {"output_dir",
         [](Ctx& c, const std::string& k, const std::string& v) {
             c.cfg.output_dir = unquote(v);
             if (c.cfg.output_dir.empty()) c.err(k + " must not be empty");
         }},
        {"model.branch",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (v == "power") c.cfg.model.branch = Branch::Power;
             else if (v == "hartree") c.cfg.model.branch = Branch::Hartree;
             else c.err(k + ": expected power or hartree, got '" + v + "'");
         }},
        {"model.d",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.model.d) && (c.cfg.model.d < 2 || c.cfg.model.d > 5))
                 c.err("d must lie in [2, 5]");
         }},
        {"model.alpha",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.real(k, v, c.cfg.model.alpha) && !(c.cfg.model.alpha > 1.0 && c.cfg.model.alpha < 2.0))
                 c.err("alpha must lie in (1,2)");
         }},
        {"grid.n_per_dim",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.n) && (!is_pow2(c.cfg.n) || c.cfg.n < 4))
                 c.err(k + " must be a power of two >= 4");
         }},
        {"grid.L", [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.L); }},
        {"evolve.dt_init",
         [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.evolve.dt_init); }},
        {"evolve.t_max",
         [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.evolve.t_max); }},
        {"evolve.cfl_safety",
         [](Ctx& c, const std::string& k, const std::string& v) {
             auto& x = c.cfg.evolve.cfl_safety;
             if (c.real(k, v, x) && !(x > 0.0 && x <= 1.0)) c.err("cfl_safety must lie in (0, 1]");
         }},
        {"evolve.blowup_kinetic_factor",
         [](Ctx& c, const std::string& k, const std::string& v) {
             auto& x = c.cfg.evolve.blowup_kinetic_factor;
             if (c.real(k, v, x) && !(x > 1.0 && std::isfinite(x))) c.err(k + " must exceed 1");
         }},
        {"evolve.gradient_resolution_floor",
         [](Ctx& c, const std::string& k, const std::string& v) {
             auto& x = c.cfg.evolve.gradient_resolution_floor;
             if (c.real(k, v, x) && !(x > 0.0 && x < 1.0)) c.err(k + " must lie in (0, 1)");
         }},
        {"evolve.checkpoint_every",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.evolve.checkpoint_every) && c.cfg.evolve.checkpoint_every <= 0)
                 c.err(k + " must be positive");
         }},
        {"evolve.record_every",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.evolve.record_every) && c.cfg.evolve.record_every <= 0)
                 c.err(k + " must be positive");
         }},
        {"evolve.adaptive",
         [](Ctx& c, const std::string& k, const std::string& v) { c.boolean(k, v, c.cfg.evolve.adaptive); }},
        {"evolve.max_steps",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.evolve.max_steps) && c.cfg.evolve.max_steps <= 0)
                 c.err(k + " must be positive");
         }},
        {"evolve.stability_constant",
         [](Ctx& c, const std::string& k, const std::string& v) {
             c.positive(k, v, c.cfg.evolve.stability_constant);
         }},
        {"initial_data", [](Ctx& c, const std::string&, const std::string& v) { set_initial_call(c, v); }},
        {"initial_data.kind",
         [](Ctx& c, const std::string&, const std::string& v) {
             if (v.find('(') != std::string::npos) c.err("initial_data.kind takes a bare name");
             else set_initial_call(c, v);
         }},
        {"initial_data.sigma",
         [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.initial.sigma); }},
        {"initial_data.amplitude",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.real(k, v, c.cfg.initial.amplitude) && !std::isfinite(c.cfg.initial.amplitude))
                 c.err(k + " must be finite");
         }},
        {"initial_data.chirp_b",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.real(k, v, c.cfg.initial.chirp_b) && !std::isfinite(c.cfg.initial.chirp_b))
                 c.err(k + " must be finite");
         }},
        {"initial_data.factor",
         [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.initial.factor); }},
        {"initial_data.path",
         [](Ctx& c, const std::string&, const std::string& v) { c.cfg.initial.path = unquote(v); }},
        {"groundstate.tol",
         [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.groundstate.tol); }},
        {"groundstate.max_iter",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.groundstate.max_iter) && c.cfg.groundstate.max_iter <= 0)
                 c.err(k + " must be positive");
         }},
        {"groundstate.core_width",
         [](Ctx& c, const std::string& k, const std::string& v) {
             auto& x = c.cfg.groundstate.core_width;
             if (c.real(k, v, x) && !(x >= 0.0 && std::isfinite(x))) c.err(k + " must be >= 0 (0 picks a default)");
         }},
        {"verify.family_size",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.verify.family_size) && c.cfg.verify.family_size <= 0)
                 c.err(k + " must be positive");
         }},
        {"verify.window_T",
         [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.verify.window_T); }},
        {"verify.n_samples",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.verify.n_samples) && c.cfg.verify.n_samples < 2) c.err(k + " must be >= 2");
         }},
        {"verify.sobolev_family_size",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.verify.sobolev_family_size) && c.cfg.verify.sobolev_family_size <= 0)
                 c.err(k + " must be positive");
         }},
        {"verify.commutator_lambdas",
         [](Ctx& c, const std::string& k, const std::string& v) {
             std::vector<double> out;
             std::stringstream ss(v);
             std::string a;
             bool ok = true;
             while (std::getline(ss, a, ',')) {
                 double x;
                 if (!c.real(k, trim(a), x)) {
                     ok = false;
                     break;
                 }
                 if (!(x >= 1.0)) {
                     c.err(k + ": every lambda must be >= 1");
                     ok = false;
                     break;
                 }
                 out.push_back(x);
             }
             if (ok && out.size() < 2) {
                 c.err(k + ": need at least two values");
                 ok = false;
             }
             if (ok) c.cfg.verify.commutator_lambdas = out;
         }},
        {"verify.commutator_n",
         [](Ctx& c, const std::string& k, const std::string& v) {
             if (c.integer(k, v, c.cfg.verify.commutator_n) && (!is_pow2(c.cfg.verify.commutator_n) ||
                                                                 c.cfg.verify.commutator_n < 16))
                 c.err(k + " must be a power of two >= 16");
         }},
        {"verify.commutator_L",
         [](Ctx& c, const std::string& k, const std::string& v) { c.positive(k, v, c.cfg.verify.commutator_L); }},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : handlers()) k.push_back(name);
        return k;
    }();
    return keys;
}

ScenarioConfig parse_config(const std::string& text, const std::string& base_dir) {
    ScenarioConfig cfg;
    std::vector<std::string> errors;
    Ctx ctx{cfg, errors, base_dir};

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        ctx.line = line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            ctx.err("expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            ctx.err("missing key");
            continue;
        }
        if (value.empty()) {
            ctx.err(key + ": missing value");
            continue;
        }
        const auto& hs = handlers();
        auto it = std::find_if(hs.begin(), hs.end(), [&](const auto& p) { return p.first == key; });
        if (it == hs.end()) {
            ctx.err("unknown key '" + key + "'");
            continue;
        }
        if (cfg.lines.count(key)) {
            ctx.err("duplicate key '" + key + "' (first set on line " + std::to_string(cfg.lines[key]) + ")");
            continue;
        }
        cfg.lines[key] = line_no;
        it->second(ctx, key, value);
    }

    auto line_of = [&](std::initializer_list<const char*> keys) {
        int best = 0;
        for (const char* k : keys)
            if (cfg.lines.count(k)) best = std::max(best, cfg.lines.at(k));
        return best;
    };
    auto cross = [&](int line, const std::string& m) {
        errors.push_back((line > 0 ? "line " + std::to_string(line) : std::string("defaults")) + ": " + m);
    };

    const auto& m = cfg.model;
    if (m.branch == Branch::Hartree && m.d >= 2 && m.d <= 5 && m.alpha > 1.0 && m.alpha < 2.0 &&
        !(m.d > 2.0 * m.alpha)) {
        std::ostringstream os;
        os << "Hartree branch requires d > 2 alpha (d = " << m.d << ", alpha = " << m.alpha << ")";
        cross(line_of({"model.branch", "model.d", "model.alpha"}), os.str());
    }
    if (m.d >= 2 && m.d <= 5 && cfg.n >= 4 && ((cfg.n & (cfg.n - 1)) == 0)) {
        if (m.d >= 5 && cfg.n > 32) cross(line_of({"grid.n_per_dim", "model.d"}), "d = 5 grids allow at most 32 points per axis");
        else if (std::pow(static_cast<double>(cfg.n), m.d) > static_cast<double>(1u << 27))
            cross(line_of({"grid.n_per_dim", "model.d"}), "grid too large: n_per_dim^d exceeds 2^27 points");
    }
    if (cfg.initial.kind == InitialData::Kind::FromCheckpoint) {
        const int ln = line_of({"initial_data", "initial_data.kind", "initial_data.path"});
        if (cfg.initial.path.empty()) {
            cross(ln, "from_checkpoint needs a path");
        } else {
            std::filesystem::path p(cfg.initial.path);
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            cfg.initial.path = p.lexically_normal().string();
            if (!std::filesystem::exists(p)) cross(ln, "checkpoint file not found: " + cfg.initial.path);
        }
    }
    if (!errors.empty()) throw ConfigError(errors);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError({"cannot open config file: " + path});
    std::stringstream ss;
    ss << f.rdbuf();
    auto dir = std::filesystem::path(path).parent_path();
    return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

void apply_scenario_defaults(ScenarioConfig& cfg, Scenario s) {
    if (s != Scenario::Concentrate) return;
    if (!cfg.has("initial_data") && !cfg.has("initial_data.kind")) {
        cfg.initial.kind = InitialData::Kind::ScaledGroundState;
        if (!cfg.has("initial_data.factor")) cfg.initial.factor = 1.2;
    }
    auto set = [&](const char* key, auto& field, auto value) {
        if (!cfg.has(key)) field = value;
    };
    set("evolve.record_every", cfg.evolve.record_every, 1L);
    set("evolve.dt_init", cfg.evolve.dt_init, 0.05);
    set("evolve.t_max", cfg.evolve.t_max, 2.0);
    set("evolve.blowup_kinetic_factor", cfg.evolve.blowup_kinetic_factor, 2.0);
    set("evolve.gradient_resolution_floor", cfg.evolve.gradient_resolution_floor, 1.0 - 1e-5);
}

}  // namespace fnls
