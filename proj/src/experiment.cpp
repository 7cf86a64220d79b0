#include "sphmult/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "sphmult/analysis.hpp"
#include "sphmult/rng.hpp"

namespace sphmult {

using nlohmann::json;

json default_config() {
    json c;
    c["seed"] = 20240501;
    c["family"] = {{"name", "shifting"}, {"m", 2},          {"l", 2},
                   {"degree_cap", 256},  {"table_csv", ""}};
    c["kernel"] = {{"type", "power_law"}, {"m", 2}, {"k_max", 32}, {"gamma", 3.5}, {"path", ""}};
    c["lattice"] = {{"k_min", 1}, {"k_max", 200},   {"t_min", 1e-3},
                    {"t_count", 64}, {"t_max", 1.5707963267948966}};
    c["fit"] = {{"t_min", 1e-3}, {"t_max", 0.1}, {"t_count", 32}};
    c["corpus"] = {{"size", 100},
                   {"k_max", 32},
                   {"t_values", {0.1, 0.5, 1.0}},
                   {"p_values", {1.25, 1.5, 1.75}}};
    c["decay"] = {{"beta", 1.5}, {"n_lo", 16}, {"n_hi", 0}, {"growth_limit", 2.0}};
    c["pipeline"] = {{"half_K", 200}, {"half_N", 100}, {"growth_limit", 4.0}};
    c["verify"] = {{"t_values", {0.1, 0.3, 0.5, 1.0}}};
    c["tolerances"] = {{"parseval", 1e-9},
                       {"hy_margin", -1e-6},
                       {"kernel_identity_grid", 1e-9},
                       {"kernel_identity_zonal", 1e-12},
                       {"lemma23", 1e-12},
                       {"keyabst_sup", 0.0}};
    c["output"] = {{"format", "csv"}};
    return c;
}

json merge_config(json base, const json& overlay) {
    if (!overlay.is_object() || !base.is_object()) return overlay;
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
            base[it.key()] = merge_config(base[it.key()], it.value());
        else
            base[it.key()] = it.value();
    }
    return base;
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json parse_toml_value(const std::string& raw) {
    std::string v = raw;
    const auto trim = [](std::string& s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
    };
    trim(v);
    if (v.empty()) throw ConfigError("toml: empty value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') throw ConfigError("toml: unterminated string");
        return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '[') {
        if (v.back() != ']') throw ConfigError("toml: unterminated array");
        json arr = json::array();
        std::string body = v.substr(1, v.size() - 2);
        std::string item;
        int depth = 0;
        bool in_str = false;
        for (char ch : body) {
            if (ch == '"') in_str = !in_str;
            if (!in_str && ch == '[') ++depth;
            if (!in_str && ch == ']') --depth;
            if (!in_str && depth == 0 && ch == ',') {
                if (!item.empty()) arr.push_back(parse_toml_value(item));
                item.clear();
            } else {
                item.push_back(ch);
            }
        }
        trim(item);
        if (!item.empty()) arr.push_back(parse_toml_value(item));
        return arr;
    }
    // number: integer if it round-trips as one
    try {
        std::size_t pos = 0;
        if (v.find_first_of(".eE") == std::string::npos) {
            const long long i = std::stoll(v, &pos);
            if (pos == v.size()) return i;
        }
        const double d = std::stod(v, &pos);
        if (pos == v.size()) return d;
    } catch (...) {
    }
    throw ConfigError("toml: cannot parse value '" + raw + "'");
}

} // namespace

json parse_toml_subset(const std::string& text) {
    json root = json::object();
    json* section = &root;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        // strip comments outside strings
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) {
                line.resize(i);
                break;
            }
        }
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const auto b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("toml: malformed section header");
            std::string name = line.substr(1, line.size() - 2);
            section = &root;
            std::istringstream parts(name);
            std::string part;
            while (std::getline(parts, part, '.')) {
                if (part.empty()) throw ConfigError("toml: empty section name");
                section = &((*section)[part]);
                if (!section->is_object()) *section = json::object();
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("toml: expected key = value");
        std::string key = line.substr(0, eq);
        const auto ka = key.find_first_not_of(" \t");
        const auto kb = key.find_last_not_of(" \t");
        key = key.substr(ka, kb - ka + 1);
        (*section)[key] = parse_toml_value(line.substr(eq + 1));
    }
    return root;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (ends_with(path, ".toml")) return parse_toml_subset(buf.str());
    if (ends_with(path, ".json")) {
        try {
            return json::parse(buf.str());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
    }
    throw ConfigError("config: unsupported extension (want .json or .toml): " + path);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_double_17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

const std::vector<std::string>& family_registry() {
    static const std::vector<std::string> names{"shifting", "combo", "cap", "steklov", "custom"};
    return names;
}

const std::vector<std::string>& verifier_registry() {
    static const std::vector<std::string> names{"parseval",        "hy",      "l1sup",
                                                "kernel-identity", "lemma23", "keyabst",
                                                "decay",           "pipeline"};
    return names;
}

namespace {

std::string joined(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

std::unique_ptr<CustomTableFamily> custom_from_csv(int m, int cap, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("custom family: cannot open table " + path);
    auto fam = std::make_unique<CustomTableFamily>(m, cap, std::nullopt, 1.0);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {  // expect "k,t,eta"
            header = false;
            if (line.find("k") != std::string::npos) continue;
        }
        std::istringstream row(line);
        std::string sk, st, se;
        if (!std::getline(row, sk, ',') || !std::getline(row, st, ',') || !std::getline(row, se))
            throw ConfigError("custom family: malformed row '" + line + "'");
        fam->set(std::stoi(sk), std::stod(st), std::stod(se));
    }
    return fam;
}

} // namespace

std::unique_ptr<MultiplierFamily> family_from_config(const json& cfg) {
    const json& f = cfg.at("family");
    const std::string name = f.at("name").get<std::string>();
    const int m = f.at("m").get<int>();
    const int cap = f.at("degree_cap").get<int>();
    try {
        if (name == "shifting") return std::make_unique<ShiftingFamily>(m, cap);
        if (name == "combo") return std::make_unique<ComboFamily>(m, f.at("l").get<int>(), cap);
        if (name == "cap") return std::make_unique<CapFamily>(m, cap);
        if (name == "steklov") return std::make_unique<SteklovFamily>(m, cap);
        if (name == "custom") {
            const std::string path = f.at("table_csv").get<std::string>();
            if (path.empty())
                throw ConfigError("custom family requires family.table_csv");
            return custom_from_csv(m, cap, path);
        }
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("family: ") + e.what());
    }
    throw ConfigError("unknown family '" + name + "'; valid families: " +
                      joined(family_registry()));
}

KernelFile kernel_from_config(const json& cfg) {
    const json& k = cfg.at("kernel");
    const std::string type = k.at("type").get<std::string>();
    if (type == "power_law") {
        KernelFile file;
        file.zonal = true;
        file.zonal_kernel = power_law_zonal(k.at("m").get<int>(), k.at("k_max").get<int>(),
                                            k.at("gamma").get<double>());
        return file;
    }
    if (type == "file") {
        const std::string path = k.at("path").get<std::string>();
        if (path.empty()) throw ConfigError("kernel.type = \"file\" requires kernel.path");
        try {
            return load_kernel_file(path);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("kernel file: ") + e.what());
        }
    }
    throw ConfigError("unknown kernel.type '" + type + "' (want power_law or file)");
}

namespace {

std::vector<double> grid_from(const json& node) {
    const double lo = node.at("t_min").get<double>();
    const double hi = node.at("t_max").get<double>();
    const int n = node.at("t_count").get<int>();
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ConfigError("empty or invalid t grid");
    return log_spaced(lo, hi, n);
}

} // namespace

std::vector<double> lattice_t_grid(const json& cfg) { return grid_from(cfg.at("lattice")); }
std::vector<double> fit_t_grid(const json& cfg) { return grid_from(cfg.at("fit")); }

// --- commands -------------------------------------------------------------------

int cmd_multipliers(const json& cfg, const std::string& out_dir) {
    const auto family = family_from_config(cfg);
    const std::vector<double> ts = lattice_t_grid(cfg);
    const int k_max = cfg.at("lattice").at("k_max").get<int>();
    if (k_max > family->degree_cap())
        throw ConfigError("lattice.k_max exceeds family.degree_cap");
    const double s = family->declared_s().value_or(2.0);
    std::string csv = "k,t,eta,one_minus_eta,min1kt_pow_s\n";
    for (double t : ts) {
        const std::vector<double> eta = family->eval(k_max, t);
        for (int k = 0; k <= k_max; ++k) {
            csv += std::to_string(k);
            csv += ',';
            csv += format_double_17(t);
            csv += ',';
            csv += format_double_17(eta[k]);
            csv += ',';
            csv += format_double_17(1.0 - eta[k]);
            csv += ',';
            csv += format_double_17(std::pow(std::min(1.0, k * t), s));
            csv += '\n';
        }
    }
    write_text_atomic(out_dir + "/multipliers.csv", csv);
    return 0;
}

namespace {

json report_skeleton(const std::string& check, const json& cfg) {
    json rep;
    rep["check"] = check;
    rep["inputs"] = {{"seed", cfg.at("seed")},
                     {"family", cfg.at("family")},
                     {"kernel", cfg.at("kernel")}};
    return rep;
}

int finish_report(json& rep, bool pass, const std::string& check, const std::string& out_dir) {
    rep["pass"] = pass;
    write_text_atomic(out_dir + "/verify_" + check + ".json", rep.dump(2) + "\n");
    return pass ? 0 : 1;
}

// corpus of seeded band-limited functions shared by the Fourier-sum checks
std::vector<CoeffTable> make_corpus(const json& cfg) {
    Rng rng(cfg.at("seed").get<std::uint64_t>());
    const int size = cfg.at("corpus").at("size").get<int>();
    const int K = cfg.at("corpus").at("k_max").get<int>();
    if (size < 1 || cfg.at("corpus").at("t_values").empty())
        throw ConfigError("corpus: size and t_values must be nonempty");
    std::vector<CoeffTable> fs;
    fs.reserve(size);
    for (int i = 0; i < size; ++i) fs.push_back(random_band_limited(rng, K));
    return fs;
}

int verify_parseval(const json& cfg, const std::string& out_dir) {
    const auto family = family_from_config(cfg);
    const int K = cfg.at("corpus").at("k_max").get<int>();
    const double tol = cfg.at("tolerances").at("parseval").get<double>();
    const auto ts = cfg.at("corpus").at("t_values").get<std::vector<double>>();
    AnalysisContext ctx(K);
    const std::vector<CoeffTable> corpus = make_corpus(cfg);
    double worst = 0.0;
    std::string trace = "run,t,lhs,rhs_sq,residual\n";
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (double t : ts) {
            const ParsevalReport r = parseval_equality_check(ctx, corpus[i], *family, t);
            worst = std::max(worst, r.residual);
            trace += std::to_string(i) + ',' + format_double(t) + ',' + format_double(r.lhs) +
                     ',' + format_double(r.rhs_sq) + ',' + format_double(r.residual) + '\n';
        }
    write_text_atomic(out_dir + "/verify_parseval_trace.csv", trace);
    json rep = report_skeleton("parseval", cfg);
    rep["lhs"] = "coefficient-space weighted sum";
    rep["rhs"] = "spatial L2 norm of Mf - f, squared";
    rep["residual_or_margin"] = worst;
    rep["tolerances"] = {{"parseval", tol}};
    rep["runs"] = corpus.size() * ts.size();
    return finish_report(rep, worst <= tol, "parseval", out_dir);
}

int verify_hy(const json& cfg, const std::string& out_dir, bool sup_form) {
    const auto family = family_from_config(cfg);
    const int K = cfg.at("corpus").at("k_max").get<int>();
    const double tol = cfg.at("tolerances").at("hy_margin").get<double>();
    const auto ts = cfg.at("corpus").at("t_values").get<std::vector<double>>();
    const auto ps = sup_form ? std::vector<double>{1.0}
                             : cfg.at("corpus").at("p_values").get<std::vector<double>>();
    AnalysisContext ctx(K);
    const std::vector<CoeffTable> corpus = make_corpus(cfg);
    double worst = std::numeric_limits<double>::infinity();
    std::string trace = "run,p,t,lhs,rhs,margin\n";
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (double p : ps)
            for (double t : ts) {
                const MarginReport r = sup_form
                                           ? l1_sup_check(ctx, corpus[i], *family, t)
                                           : hausdorff_young_check(ctx, corpus[i], *family, t, p);
                worst = std::min(worst, r.margin);
                trace += std::to_string(i) + ',' + format_double(p) + ',' + format_double(t) +
                         ',' + format_double(r.lhs) + ',' + format_double(r.rhs) + ',' +
                         format_double(r.margin) + '\n';
            }
    const std::string check = sup_form ? "l1sup" : "hy";
    write_text_atomic(out_dir + "/verify_" + check + "_trace.csv", trace);
    json rep = report_skeleton(check, cfg);
    rep["lhs"] = "weighted Fourier sum of Mf - f";
    rep["rhs"] = "L^p norm of Mf - f";
    rep["residual_or_margin"] = worst;
    rep["tolerances"] = {{"hy_margin", tol}};
    rep["runs"] = corpus.size() * ps.size() * ts.size();
    return finish_report(rep, worst >= tol, check, out_dir);
}

int verify_kernel_identity(const json& cfg, const std::string& out_dir) {
    const auto family = family_from_config(cfg);
    const KernelFile kern = kernel_from_config(cfg);
    const auto ts = cfg.at("verify").at("t_values").get<std::vector<double>>();
    const bool zonal = kern.zonal;
    const double tol = zonal ? cfg.at("tolerances").at("kernel_identity_zonal").get<double>()
                             : cfg.at("tolerances").at("kernel_identity_grid").get<double>();
    double worst = 0.0;
    json items = json::array();
    std::optional<AnalysisContext> ctx;
    if (!zonal) ctx.emplace(kern.band_limit());
    for (double t : ts) {
        const KernelIdentityReport r =
            zonal ? kernel_identity_check(kern.zonal_kernel, *family, t)
                  : kernel_identity_check(*ctx, kern.full_kernel, *family, t);
        worst = std::max(worst, r.residual);
        if (zonal) worst = std::max(worst, r.closed_residual);
        items.push_back({{"t", t}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}});
    }
    json rep = report_skeleton("kernel-identity", cfg);
    rep["results"] = items;
    rep["residual_or_margin"] = worst;
    rep["tolerances"] = {{"residual", tol}};
    return finish_report(rep, worst <= tol, "kernel-identity", out_dir);
}

int verify_lemma23(const json& cfg, const std::string& out_dir) {
    const auto family = family_from_config(cfg);
    const KernelFile kern = kernel_from_config(cfg);
    if (!kern.zonal) throw ConfigError("lemma23 check requires a zonal kernel");
    const auto ts = cfg.at("verify").at("t_values").get<std::vector<double>>();
    const double tol = cfg.at("tolerances").at("lemma23").get<double>();
    double worst = 0.0;
    bool bounds_ok = true;
    json items = json::array();
    for (double t : ts) {
        const SqrtDeviationReport r = sqrt_deviation_identity_check(kern.zonal_kernel, *family, t);
        worst = std::max(worst, r.residual);
        bounds_ok = bounds_ok && r.bound_holds;
        items.push_back({{"t", t},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"residual", r.residual},
                         {"bound", r.bound},
                         {"bound_holds", r.bound_holds}});
    }
    json rep = report_skeleton("lemma23", cfg);
    rep["results"] = items;
    rep["residual_or_margin"] = worst;
    rep["tolerances"] = {{"residual", tol}};
    return finish_report(rep, worst <= tol && bounds_ok, "lemma23", out_dir);
}

int verify_keyabst(const json& cfg, const std::string& out_dir) {
    const auto family = family_from_config(cfg);
    const KernelFile kern = kernel_from_config(cfg);
    if (!kern.zonal) throw ConfigError("keyabst check requires a zonal kernel");
    const std::vector<double> ts = fit_t_grid(cfg);
    const double beta = cfg.at("decay").at("beta").get<double>();
    const KeyabstReport r = keyabst_scan(kern.zonal_kernel, *family, ts, beta);
    std::string trace = "t,S\n";
    for (std::size_t i = 0; i < r.t.size(); ++i)
        trace += format_double(r.t[i]) + ',' + format_double(r.s[i]) + '\n';
    write_text_atomic(out_dir + "/verify_keyabst_trace.csv", trace);
    const double sup_limit = cfg.at("tolerances").at("keyabst_sup").get<double>();
    const bool pass =
        std::isfinite(r.sup_ratio) && (sup_limit <= 0.0 || r.sup_ratio <= sup_limit);
    json rep = report_skeleton("keyabst", cfg);
    rep["lhs"] = "sup_t S(t)/t^beta";
    rep["rhs"] = "finite bound";
    rep["residual_or_margin"] = r.sup_ratio;
    rep["tolerances"] = {{"keyabst_sup", sup_limit}, {"beta", beta}};
    return finish_report(rep, pass, "keyabst", out_dir);
}

int verify_decay(const json& cfg, const std::string& out_dir) {
    const KernelFile kern = kernel_from_config(cfg);
    if (!kern.zonal) throw ConfigError("decay check requires a zonal kernel");
    const double beta = cfg.at("decay").at("beta").get<double>();
    const double limit = cfg.at("decay").at("growth_limit").get<double>();
    const EigenvalueSequence seq = eigenvalue_sequence(kern.zonal_kernel);
    std::size_t n_hi = cfg.at("decay").at("n_hi").get<std::size_t>();
    if (n_hi == 0) n_hi = seq.lambdas.size();
    const std::size_t n_lo = cfg.at("decay").at("n_lo").get<std::size_t>();
    const DecayReport r = decay_check(seq, beta, kern.sphere_dim(), n_lo, n_hi);
    std::string trace = "n_lo,n_hi,sup\n";
    for (const auto& w : r.windows)
        trace += std::to_string(w.n_lo) + ',' + std::to_string(w.n_hi) + ',' +
                 format_double(w.sup) + '\n';
    write_text_atomic(out_dir + "/verify_decay_trace.csv", trace);
    json rep = report_skeleton("decay", cfg);
    rep["lhs"] = "windowed sup of lambda_n n^{1+beta/m}";
    rep["rhs"] = "bounded across windows";
    rep["residual_or_margin"] = r.window_ratio();
    rep["tolerances"] = {{"window_ratio", limit}, {"beta", beta}};
    return finish_report(rep, r.window_ratio() <= limit, "decay", out_dir);
}

int verify_pipeline(const json& cfg, const std::string& out_dir) {
    const auto family = family_from_config(cfg);
    const KernelFile kern = kernel_from_config(cfg);
    if (!kern.zonal) throw ConfigError("pipeline check requires a zonal kernel");
    const std::vector<double> ts = fit_t_grid(cfg);
    const json& p = cfg.at("pipeline");
    const PipelineReport r = end_to_end_theorem31(
        kern.zonal_kernel, *family, ts, cfg.at("decay").at("n_lo").get<std::size_t>(),
        cfg.at("decay").at("n_hi").get<std::size_t>(), p.at("half_K").get<int>(),
        p.at("half_N").get<int>(), p.at("growth_limit").get<double>());
    json rep = report_skeleton("pipeline", cfg);
    rep["stages"] = {{"half_bounded",
                      {{"status", to_string(r.half_bounded_status)},
                       {"M_lower", r.half_bounded.M_lower}}},
                     {"fit",
                      {{"status", to_string(r.fit_status)},
                       {"beta_hat", r.fit.slope},
                       {"beta_above_two", r.beta_above_two},
                       {"error", r.fit_error}}},
                     {"decay",
                      {{"status", to_string(r.decay_status)},
                       {"growth_factor",
                        r.decay_status == StageStatus::blocked ? 0.0 : r.decay.growth_factor()},
                       {"growth_limit", r.decay_growth_limit}}}};
    rep["residual_or_margin"] = r.half_bounded.M_lower;
    rep["tolerances"] = {{"growth_limit", r.decay_growth_limit}};
    return finish_report(rep, r.pass, "pipeline", out_dir);
}

} // namespace

int cmd_verify(const std::string& check, const json& cfg, const std::string& out_dir) {
    const auto& reg = verifier_registry();
    if (std::find(reg.begin(), reg.end(), check) == reg.end())
        throw ConfigError("unknown check '" + check + "'; valid checks: " + joined(reg));
    if (check == "parseval") return verify_parseval(cfg, out_dir);
    if (check == "hy") return verify_hy(cfg, out_dir, false);
    if (check == "l1sup") return verify_hy(cfg, out_dir, true);
    if (check == "kernel-identity") return verify_kernel_identity(cfg, out_dir);
    if (check == "lemma23") return verify_lemma23(cfg, out_dir);
    if (check == "keyabst") return verify_keyabst(cfg, out_dir);
    if (check == "decay") return verify_decay(cfg, out_dir);
    return verify_pipeline(cfg, out_dir);
}

int cmd_fit_holder(const json& cfg, const std::string& out_dir) {
    const auto family = family_from_config(cfg);
    const KernelFile kern = kernel_from_config(cfg);
    if (!kern.zonal) throw ConfigError("fit-holder requires a zonal kernel");
    const std::vector<double> ts = fit_t_grid(cfg);
    std::vector<double> gs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        gs[i] = holder_integral(kern.zonal_kernel, *family, ts[i]);
    std::string trace = "t,g\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        trace += format_double(ts[i]) + ',' + format_double(gs[i]) + '\n';
    write_text_atomic(out_dir + "/holder_g.csv", trace);
    json rep = report_skeleton("fit-holder", cfg);
    try {
        const FitReport fit = fit_loglog(ts, gs);
        rep["fit"] = {{"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"residual_rms", fit.residual},
                      {"t_lo_used", fit.t_lo_used},
                      {"t_hi_used", fit.t_hi_used},
                      {"points_used", fit.points_used},
                      {"points_dropped", fit.points_dropped}};
        rep["pass"] = true;
        write_text_atomic(out_dir + "/fit_holder.json", rep.dump(2) + "\n");
        return 0;
    } catch (const std::exception& e) {
        rep["error"] = e.what();
        rep["pass"] = false;
        write_text_atomic(out_dir + "/fit_holder.json", rep.dump(2) + "\n");
        return 1;
    }
}

int cmd_eigen(const json& cfg, const std::string& out_dir) {
    const KernelFile kern = kernel_from_config(cfg);
    const EigenvalueSequence seq = kern.zonal ? eigenvalue_sequence(kern.zonal_kernel)
                                              : eigenvalue_sequence(kern.full_kernel);
    const std::string format = cfg.at("output").at("format").get<std::string>();
    if (format == "json") {
        json j;
        j["m"] = kern.sphere_dim();
        j["k_max"] = kern.band_limit();
        j["lambdas"] = seq.lambdas;
        write_text_atomic(out_dir + "/eigen.json", j.dump(2) + "\n");
    } else if (format == "csv") {
        std::string csv = "n,lambda,k,j\n";
        for (std::size_t n = 0; n < seq.lambdas.size(); ++n)
            csv += std::to_string(n + 1) + ',' + format_double(seq.lambdas[n]) + ',' +
                   std::to_string(seq.provenance[n].first) + ',' +
                   std::to_string(seq.provenance[n].second) + '\n';
        write_text_atomic(out_dir + "/eigen.csv", csv);
    } else {
        throw ConfigError("output.format must be csv or json");
    }
    return 0;
}

} // namespace sphmult
