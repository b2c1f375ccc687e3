#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "uplab/bm.hpp"
#include "uplab/circle.hpp"
#include "uplab/im.hpp"
#include "uplab/logint.hpp"
#include "uplab/riesz.hpp"
#include "uplab/szego.hpp"
#include "uplab/uniqueness.hpp"

using namespace uplab;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Artifact {
    std::string path;
    std::string content;
    long rows = 0;
};

struct Certificate {
    std::string name;
    bool ok = false;
    std::string detail;
};

class Csv {
public:
    explicit Csv(const std::string& header) : text_(header + "\n") {}
    explicit Csv(std::string body, long rows) : text_(std::move(body)), rows_(rows) {}

    void row(std::initializer_list<double> v)
    {
        bool first = true;
        for (double x : v) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            if (!first) text_ += ',';
            text_ += buf;
            first = false;
        }
        text_ += '\n';
        ++rows_;
    }
    const std::string& text() const { return text_; }
    long rows() const { return rows_; }

private:
    std::string text_;
    long rows_ = 0;
};

long data_rows(const std::string& csv)
{
    long n = 0;
    for (char c : csv) n += c == '\n';
    return n > 0 ? n - 1 : 0;
}

struct Context {
    json params;
    std::uint64_t seed = 1;
    std::vector<Artifact> files;
    std::vector<Certificate> certs;
    json report = json::object();

    double num(const char* k) const { return params.at(k).get<double>(); }
    int integer(const char* k) const { return params.at(k).get<int>(); }
    std::string str(const char* k) const { return params.at(k).get<std::string>(); }
    std::vector<double> list(const char* k) const { return params.at(k).get<std::vector<double>>(); }

    void csv(const std::string& path, const Csv& c) { files.push_back({path, c.text(), c.rows()}); }
    void csv(const std::string& path, const std::string& body) { files.push_back({path, body, data_rows(body)}); }
    void certify(const std::string& name, bool ok, const std::string& detail = "") { certs.push_back({name, ok, detail}); }
};

struct Experiment {
    std::string name;
    std::string module;
    std::string summary;
    json defaults;
    std::function<void(Context&)> run;
};

std::string num_str(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

IntervalSet interval_set(const json& j)
{
    std::string d = j.at("domain").get<std::string>();
    if (d != "line" && d != "circle") throw ConfigError("interval set domain must be line or circle");
    return IntervalSet(d == "line" ? Domain::line : Domain::circle, j.at("intervals").get<std::vector<std::pair<double, double>>>());
}

MajorantSeq majorant_from(const Context& c)
{
    std::string kind = c.str("majorant");
    long N = c.integer("N");
    if (kind == "power") return power_majorant(c.num("alpha"), N);
    if (kind == "exponential") {
        std::vector<double> w(N);
        for (long n = 0; n < N; ++n) w[n] = std::exp(-c.num("alpha") * n);
        return majorant_validate(w);
    }
    throw ConfigError("majorant must be power or exponential");
}

void kernels(Context& c)
{
    int lo = c.integer("n_min"), hi = c.integer("n_max"), M = c.integer("M");
    if (lo < 1 || hi < lo || hi > 20) throw ConfigError("need 1 <= n_min <= n_max <= 20");
    std::vector<std::future<double>> jobs;
    for (int p = lo; p <= hi; ++p) jobs.push_back(std::async(std::launch::async, [p, M] { return dirichlet_l1(1 << p, M); }));
    Csv out("N,l1_norm");
    double prev = 0;
    bool increasing = true;
    for (int p = lo; p <= hi; ++p) {
        double v = jobs[p - lo].get();
        increasing = increasing && v > prev;
        prev = v;
        out.row({double(1 << p), v});
    }
    c.csv("kernels.csv", out);
    Csv coeffs("index,re,im");
    auto k = kernel_coeffs(KernelKind::fejer, 1 << lo);
    for (int n = k.lo; n <= k.hi; ++n) coeffs.row({double(n), k.at(n).real(), k.at(n).imag()});
    c.csv("fejer_coeffs.csv", coeffs);
    c.certify("l1_norm_increasing", increasing);
}

void wiener(Context& c)
{
    auto a = c.list("coeffs");
    if (a.empty()) throw ConfigError("coeffs must be nonempty");
    CoeffWindow f(0, int(a.size()) - 1);
    for (size_t n = 0; n < a.size(); ++n) f[int(n)] = a[n];
    auto r = wiener_invert(f, c.num("tol"));
    Csv out("index,re,im");
    for (int n = r.g.lo; n <= r.g.hi; ++n) out.row({double(n), r.g.at(n).real(), r.g.at(n).imag()});
    c.csv("inverse_coeffs.csv", out);
    c.report["residual_l1"] = r.residual_l1;
    c.report["terms"] = r.terms;
    c.certify("residual_l1", r.residual_l1 < c.num("tol"), num_str(r.residual_l1));
}

void riesz(Context& c)
{
    auto fr = c.params.at("freqs").get<std::vector<long long>>();
    auto amps = c.list("amps");
    if (amps.size() != fr.size()) throw ConfigError("freqs and amps differ in length");
    RieszSpec r{lacunary(fr), amps, RieszKind::R1};
    int n = int(fr.size());
    Csv co("frequency,re,im");
    double total = 0;
    for (auto& [k, v] : riesz_sparse(r, n)) {
        co.row({double(k), v.real(), v.imag()});
        total += std::norm(v);
    }
    c.csv("riesz_coeffs.csv", co);
    Csv bl("j,block_mass");
    for (int j = 0; j <= n; ++j) bl.row({double(j), block_mass(r, j, n)});
    c.csv("blocks.csv", bl);
    double expect = 1;
    for (double a : amps) expect *= 1 + a * a / 2;
    c.certify("parseval_mass", std::abs(total - expect) <= 1e-12 * expect, num_str(total) + " vs " + num_str(expect));
}

SampledMeasure cos_weight(const Context& c)
{
    double b = c.num("b");
    if (!(std::abs(b) < 2)) throw ConfigError("need |b| < 2 for a positive weight");
    return weighted(sample_real(c.integer("grid"), [b](double t) { return 2 + b * std::cos(t); }));
}

void szego(Context& c)
{
    auto mu = cos_weight(c);
    double b = c.num("b");
    double geo = (2 + std::sqrt(4 - b * b)) / 2, har = std::sqrt(4 - b * b);
    int nmax = c.integer("n_max"), step = c.integer("step");
    if (step < 1 || nmax < 0) throw ConfigError("need step >= 1 and n_max >= 0");
    std::vector<int> ns;
    for (int n = 0; n <= nmax; n += step) ns.push_back(n);
    std::vector<std::future<std::pair<double, double>>> jobs;
    for (int n : ns)
        jobs.push_back(std::async(std::launch::async, [&mu, n] { return std::make_pair(szego_distance(mu, n), kolmogorov_distance(mu, n)); }));
    Csv s("n,distance,target,gap"), k("n,distance,target,gap");
    std::vector<double> d;
    for (size_t i = 0; i < ns.size(); ++i) {
        auto [ds, dk] = jobs[i].get();
        d.push_back(ds);
        s.row({double(ns[i]), ds, geo, ds - geo});
        k.row({double(ns[i]), dk, har, dk - har});
    }
    c.csv("szego.csv", s);
    c.csv("kolmogorov.csv", k);
    auto e = extrapolate_geometric(d);
    c.report["extrapolated"] = e.limit;
    c.report["rho"] = e.rho;
    c.certify("szego_limit", std::abs(e.limit - geo) < 0.02 * geo, num_str(e.limit) + " vs " + num_str(geo));
}

void verblunsky_exp(Context& c)
{
    auto mu = cos_weight(c);
    auto al = verblunsky(moments(mu, c.integer("n")));
    Csv out("n,re,im");
    for (size_t n = 0; n < al.size(); ++n) out.row({double(n), al[n].real(), al[n].imag()});
    c.csv("verblunsky.csv", out);
    auto r = szego_product_check(al, mu);
    c.report = {{"prod_abs", r.prod_abs}, {"prod_sq", r.prod_sq}, {"target", r.target}, {"abs_matches", r.abs_matches},
                {"sq_matches", r.sq_matches}};
    c.certify("product_form", r.sq_matches, "squared form " + num_str(r.prod_sq) + " vs " + num_str(r.target));
}

void localization(Context& c)
{
    LocalizationSpec s;
    s.E = interval_set(c.params.at("E"));
    s.F = interval_set(c.params.at("F"));
    s.L = c.num("L");
    s.M = c.integer("M");
    s.sharp = c.params.at("sharp").get<bool>();
    auto ab = ab_inequality_check(s, c.integer("trials"), c.seed);
    Csv out("E_measure,F_measure,norm,C");
    out.row({s.E.length(), s.F.length(), ab.norm, ab.C});
    c.csv("localization.csv", out);
    c.report = {{"norm", ab.norm}, {"C", ab.C}, {"worst_ratio", ab.worst_ratio}, {"worst_trial", ab.worst_trial}, {"holds", ab.holds}};
    c.certify("norm_below_one", ab.norm < 1, num_str(ab.norm));
    c.certify("ab_inequality", ab.holds, "worst ratio " + num_str(ab.worst_ratio));
}

void logvinenko_sereda(Context& c)
{
    PeriodicSet Ec{c.params.at("base").get<std::vector<std::pair<double, double>>>(), c.num("period")};
    auto r = ls_inequality_check(Ec, c.num("a"), c.integer("trials"), c.seed);
    c.report = {{"delta", r.delta}, {"gamma", r.gamma}, {"bound", r.bound}, {"empirical", r.empirical}, {"trials", r.trials},
                {"holds", r.holds}};
    Csv out("x,harmonic_measure");
    for (int i = 0; i <= 64; ++i) {
        double x = Ec.period * i / 64;
        out.row({x, harmonic_measure_line(Ec, x)});
    }
    c.csv("harmonic_measure.csv", out);
    c.certify("ls_inequality", r.holds, "empirical " + num_str(r.empirical) + " vs bound " + num_str(r.bound));
}

void uncertainty(Context& c)
{
    double s = c.num("sigma");
    auto f = line_sample_real(c.num("L"), c.integer("M"), [s](double x) { return std::exp(-x * x / (2 * s * s)); });
    auto r = uncertainty_checks(f);
    c.report = {{"norm2", r.norm2}, {"sigma_x", r.sigma_x}, {"sigma_xi", r.sigma_xi}, {"heisenberg_ratio", r.heisenberg_ratio},
                {"entropy_sum", r.entropy_sum}, {"entropy_bound", r.entropy_bound}, {"truncation_warning", r.truncation_warning}};
    c.certify("heisenberg", r.heisenberg_ratio >= 1 - 1e-6, num_str(r.heisenberg_ratio));
    c.certify("entropy", r.entropy_sum >= r.entropy_bound - 1e-6, num_str(r.entropy_sum));
}

void muntz(Context& c)
{
    auto lam = c.list("lambdas");
    double k = c.num("kappa");
    Csv out("n,muntz_distance");
    std::vector<double> prefix;
    double prev = INFINITY;
    bool mono = true;
    for (size_t n = 0; n <= lam.size(); ++n) {
        double d = muntz_distance(prefix, k);
        out.row({double(n), d});
        mono = mono && d <= prev;
        prev = d;
        if (n < lam.size()) prefix.push_back(lam[n]);
    }
    c.csv("muntz.csv", out);
    c.certify("monotone", mono);
}

void im(Context& c)
{
    auto w = majorant_from(c);
    int levels = c.integer("levels"), window = c.integer("window");
    auto run = im_iterate(w, levels, c.integer("grid"), c.seed, window);
    json states = json::array();
    for (auto& s : run.states) {
        c.csv("im_level_" + std::to_string(s.level) + ".csv", im_level_csv(s, w, window));
        states.push_back({{"level", s.level}, {"support_measure", s.support_measure}, {"mean", s.mean},
                          {"majorant_ratio", s.majorant_ratio}, {"eps", s.eps}, {"delta", s.delta}, {"invariants", s.invariants}});
    }
    c.report = {{"reg_constant", w.reg_constant}, {"states", states}, {"complete", run.complete}, {"diagnostics", run.diagnostics}};
    bool inv = true;
    for (auto& s : run.states) inv = inv && s.invariants;
    c.certify("invariants", inv);
    c.certify("levels_complete", run.complete, run.diagnostics);
}

void psi(Context& c)
{
    auto w = majorant_from(c);
    auto p = psi_step(w, c.num("eps"), c.num("delta"), c.integer("grid"), c.seed);
    auto co = dft_coeffs(p.psi, p.cert.window);
    Csv out("n,abs_psihat,bound");
    for (int n = 1; n <= p.cert.window; ++n) out.row({double(n), std::abs(co.at(n)), c.num("eps") * w.w[n]});
    c.csv("psi_level.csv", out);
    c.report = {{"mean", p.cert.mean}, {"min_value", p.cert.min_value}, {"zero_fraction", p.cert.zero_fraction},
                {"eps_achieved", p.cert.eps_achieved}, {"blocks", p.cert.blocks}, {"attempts", p.cert.attempts}};
    c.certify("psi_certificate", p.cert.ok);
}

void korner(Context& c)
{
    auto s = korner_negative_sequence(c.integer("J"));
    Csv out("j,log2_N,sq_block,log_block");
    for (size_t j = 0; j < s.sq_blocks.size(); ++j) out.row({double(j + 1), double(s.log2N[j]), s.sq_blocks[j], s.log_blocks[j]});
    c.csv("korner.csv", out);
    c.report = {{"sum_sq", s.sum_sq}, {"sum_log", s.sum_log}};
    c.certify("sum_sq", s.sum_sq >= c.num("sq_target"), num_str(s.sum_sq));
    c.certify("sum_log", s.sum_log <= c.num("log_target"), num_str(s.sum_log));
}

void mild(Context& c)
{
    double p = c.num("p");
    auto w = [p](double x) { return std::pow(1 + x * x, -p); };
    auto r = mild_bm(w, c.num("a"));
    int stride = std::max(1, c.integer("stride"));
    Csv out("xi,abs_ghat,w");
    for (int i = 0; i < r.ghat.size(); i += stride) out.row({r.ghat.x(i), std::abs(r.ghat.values(i)), w(r.ghat.x(i))});
    c.csv("mild_bm.csv", out);
    Csv g("s,re,im");
    for (size_t i = 0; i < r.s.size(); ++i) g.row({r.s[i], r.g(i).real(), r.g(i).imag()});
    c.csv("g.csv", g);
    c.report = {{"a", r.a}, {"margin", r.margin}, {"worst_x", r.worst_x}, {"g0", r.g0}, {"two_way", r.two_way}};
    c.certify("margin", r.margin > 0, num_str(r.margin));
    c.certify("nontrivial", r.mass > 0);
}

void envelope(Context& c)
{
    double p = c.num("p");
    auto O = line_sample_real(c.num("L"), c.integer("M"), [p](double x) { return p * std::log1p(x * x); });
    auto e = subharmonic_envelope(bm_problem(O), c.num("C"), c.num("X"), c.num("Y"));
    c.csv("envelope.csv", envelope_csv(e, std::max(1, c.integer("stride"))));
    c.report = {{"laplacian_margin", e.laplacian_margin}, {"axis_min", e.axis_min}, {"trace_error", e.trace_error},
                {"growth_excess", e.growth_excess}};
    c.certify("laplacian", e.laplacian_margin >= -1e-6 && e.axis_min >= -1e-6, num_str(e.laplacian_margin));
    c.certify("trace", e.trace_error == 0);
    c.certify("growth", e.growth_excess <= 1e-9, num_str(e.growth_excess));
}

void multiplier_exp(Context& c)
{
    double a = c.num("a");
    auto O = line_sample_real(c.num("L"), c.integer("M"), [a](double x) { return pi * a / 4 * std::atan(x * x); });
    auto r = conjugate_multiplier(bm_problem(O, a), a);
    c.csv("multiplier.csv", multiplier_csv(r, std::max(1, c.integer("stride"))));
    c.report = {{"A", r.A}, {"l", r.l}, {"bound_slack", r.bound_slack}, {"square_slack", r.square_slack},
                {"dyakonov", r.dyakonov.deviation}};
    c.certify("bound", r.bound_slack >= 0, num_str(r.bound_slack));
    c.certify("square_integrable", r.square_slack >= 0, num_str(r.square_slack));
    c.certify("dyakonov", r.dyakonov.deviation < 1e-3, num_str(r.dyakonov.deviation));
}

void density(Context& c)
{
    std::string kind = c.str("lambda");
    double T = c.num("T");
    std::vector<double> pts;
    if (kind == "integers")
        for (long n = -long(T); n <= long(T); ++n) pts.push_back(double(n));
    else if (kind == "powers2")
        for (int j = 0; std::ldexp(1.0, j) <= T; ++j) pts.push_back(std::ldexp(1.0, j));
    else if (kind == "explicit")
        pts = c.list("points");
    else
        throw ConfigError("lambda must be integers, powers2 or explicit");
    auto r = bm_density(pts);
    c.csv("density_log.csv", r.log);
    c.report = {{"d", r.d}, {"positive", r.positive}, {"q", r.q}, {"rho", r.rho}, {"x0", r.x0}, {"families", r.families}};
    if (r.positive) c.certify("witness", validate_witness(pts, r.witness, r.d), num_str(r.d));
}

const std::vector<Experiment>& registry()
{
    static const std::vector<Experiment> r = {
        {"kernels", "circle_core", "Dirichlet kernel L1 norms over an N sweep", {{"n_min", 4}, {"n_max", 12}, {"M", 65536}}, kernels},
        {"wiener", "circle_core", "inverse of a nonvanishing absolutely convergent series", {{"coeffs", {2.0, 1.0}}, {"tol", 1e-8}}, wiener},
        {"riesz", "riesz_lacunary", "sparse Riesz product coefficients and block masses",
         {{"freqs", {3, 9, 27, 81, 243}}, {"amps", {1.0, 1.0, 1.0, 1.0, 1.0}}},
         riesz},
        {"szego", "szego_opuc", "Szego and Kolmogorov distances for w = 2 + b cos t",
         {{"b", 1.0}, {"grid", 8192}, {"n_max", 512}, {"step", 16}},
         szego},
        {"verblunsky", "szego_opuc", "Verblunsky coefficients and the product check", {{"b", 1.0}, {"grid", 2048}, {"n", 128}},
         verblunsky_exp},
        {"localization", "uniqueness_pairs", "localization operator norm and the Amrein-Berthier inequality",
         {{"E", {{"domain", "line"}, {"intervals", {{-0.5, 0.5}}}}},
          {"F", {{"domain", "line"}, {"intervals", {{-0.5, 0.5}}}}},
          {"L", 16.0},
          {"M", 4096},
          {"sharp", false},
          {"trials", 100}},
         localization},
        {"logvinenko_sereda", "uniqueness_pairs", "Logvinenko-Sereda inequality on a periodic set",
         {{"base", {{0.0, 0.25}}}, {"period", 1.0}, {"a", 1.0}, {"trials", 100}},
         logvinenko_sereda},
        {"uncertainty", "uniqueness_pairs", "Heisenberg and entropic uncertainty for a Gaussian",
         {{"sigma", 1.0}, {"L", 20.0}, {"M", 1024}},
         uncertainty},
        {"muntz", "line_logint", "Muntz distances over growing exponent sets",
         {{"lambdas", {0.7, 1.5, 2.1, 2.8, 3.6, 4.3}}, {"kappa", 2.45}},
         muntz},
        {"im", "im_construct", "Ivashev-Musatov iteration with per-level spectra",
         {{"majorant", "power"}, {"alpha", 0.5}, {"N", 16384}, {"levels", 2}, {"grid", 16384}, {"window", 2048}},
         im},
        {"psi", "im_construct", "single certified psi step",
         {{"majorant", "power"}, {"alpha", 0.5}, {"N", 16384}, {"eps", 0.25}, {"delta", 0.125}, {"grid", 16384}},
         psi},
        {"korner", "im_construct", "Korner negative sequence block sums", {{"J", 4}, {"sq_target", 2.0}, {"log_target", -10.0}}, korner},
        {"mild_bm", "bm_multiplier", "compactly supported g with |ghat| below w", {{"p", 1.0}, {"a", 1.0}, {"stride", 64}}, mild},
        {"envelope", "bm_multiplier", "subharmonic envelope of a Poisson extension",
         {{"p", 1.0}, {"L", 655.36}, {"M", 65536}, {"C", 2.5}, {"X", 8.0}, {"Y", 2.0}, {"stride", 2}},
         envelope},
        {"multiplier", "bm_multiplier", "conjugate multiplier for an arctan profile",
         {{"a", 1.0}, {"L", 512.0}, {"M", 131072}, {"stride", 8}},
         multiplier_exp},
        {"density", "bm_multiplier", "long-system density search", {{"lambda", "integers"}, {"T", 10000.0}, {"points", json::array()}},
         density},
    };
    return r;
}

const Experiment& find(const std::string& name)
{
    for (auto& e : registry())
        if (e.name == name) return e;
    throw ConfigError("unknown experiment '" + name + "'");
}

bool same_kind(const json& def, const json& v)
{
    if (def.is_number_integer()) return v.is_number_integer();
    if (def.is_number()) return v.is_number();
    if (def.is_boolean()) return v.is_boolean();
    if (def.is_string()) return v.is_string();
    if (def.is_array()) return v.is_array();
    if (def.is_object()) return v.is_object();
    return false;
}

struct Config {
    std::string name;
    json params;
    std::uint64_t seed = 1;
    std::string out;
};

Config parse_config(const json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto& [k, v] : j.items())
        if (k != "name" && k != "module" && k != "summary" && k != "parameters" && k != "grid" && k != "seed" && k != "out")
            throw ConfigError("unknown config key '" + k + "'");
    if (!j.contains("name") || !j["name"].is_string()) throw ConfigError("config needs a string name");
    const auto& e = find(j["name"].get<std::string>());
    if (j.contains("module") && j["module"] != e.module) throw ConfigError("experiment " + e.name + " belongs to module " + e.module);
    Config c;
    c.name = e.name;
    c.params = e.defaults;
    for (const char* sec : {"parameters", "grid"}) {
        if (!j.contains(sec)) continue;
        if (!j[sec].is_object()) throw ConfigError(std::string(sec) + " must be an object");
        for (auto& [k, v] : j[sec].items()) {
            if (!e.defaults.contains(k)) throw ConfigError("experiment " + e.name + " has no parameter '" + k + "'");
            if (!same_kind(e.defaults[k], v)) throw ConfigError("parameter '" + k + "' has the wrong type");
            c.params[k] = v;
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw ConfigError("out must be a string");
        c.out = j["out"].get<std::string>();
    }
    return c;
}

json catalog()
{
    json a = json::array();
    for (auto& e : registry())
        a.push_back({{"name", e.name}, {"module", e.module}, {"summary", e.summary}, {"parameters", e.defaults}, {"seed", 1}});
    return a;
}

std::string sha256(const std::string& s)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    if (!EVP_Digest(s.data(), s.size(), md, &n, EVP_sha256(), nullptr)) throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

void write_file(const fs::path& p, const std::string& s)
{
    std::ofstream f(p, std::ios::binary);
    f << s;
    f.close();
    if (!f) throw ConfigError("cannot write " + p.string());
}

int run(const std::string& path, std::string out, std::optional<std::uint64_t> seed, bool check)
{
    Config cfg;
    try {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read config " + path);
        cfg = parse_config(json::parse(in));
        if (seed) cfg.seed = *seed;
        if (check) {
            const auto& e = find(cfg.name);
            std::cout << json{{"name", e.name}, {"module", e.module}, {"parameters", cfg.params}, {"seed", cfg.seed}}.dump(2) << "\n";
            return 0;
        }
        if (out.empty()) out = cfg.out.empty() ? "out/" + cfg.name : cfg.out;
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec || !fs::is_directory(out)) throw ConfigError("cannot create output directory " + out);
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const auto& e = find(cfg.name);
    Context ctx;
    ctx.params = cfg.params;
    ctx.seed = cfg.seed;
    try {
        e.run(ctx);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const json::exception& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const Error& err) {
        std::cerr << e.module << " error " << err.kind() << ": " << err.what() << "\n";
        return 2;
    }

    json certs = json::array();
    for (auto& c : ctx.certs) certs.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    json report = {{"name", e.name}, {"module", e.module}, {"seed", cfg.seed}, {"parameters", cfg.params},
                   {"certificates", certs}, {"results", ctx.report}};
    ctx.files.push_back({"report.json", report.dump(2) + "\n", 0});

    json files = json::array();
    try {
        for (auto& f : ctx.files) {
            write_file(fs::path(out) / f.path, f.content);
            files.push_back({{"path", f.path}, {"sha256", sha256(f.content)}, {"rows", f.rows}});
        }
        write_file(fs::path(out) / "manifest.json", json{{"name", e.name}, {"files", files}}.dump(2) + "\n");
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    }

    int status = 0;
    for (auto& c : ctx.certs) {
        std::cout << (c.ok ? "ok     " : "FAILED ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
        if (!c.ok) status = 2;
    }
    if (status) std::cerr << "certificate failure in " << e.name << "\n";
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"uplab experiment runner"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    std::string config, out;
    std::uint64_t seed = 0;
    run_cmd->add_option("--config", config, "config path")->required();
    run_cmd->add_option("--out", out, "output directory");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "seed override");
    bool check = false;
    run_cmd->add_flag("--check", check, "validate the config and print it with defaults filled in");

    auto* list_cmd = app.add_subcommand("list", "print the experiment catalog as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list_cmd) {
            std::cout << catalog().dump(2) << "\n";
            return 0;
        }
        std::optional<std::uint64_t> s;
        if (*seed_opt) s = seed;
        return run(config, out, s, check);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
