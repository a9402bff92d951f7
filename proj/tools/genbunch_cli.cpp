// genbunch: command-line front end.
//
// Exit codes: 0 success, 2 invalid input or usage, 1 internal fault.
// Mode and site indices on the command line and in output are 1-based.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "genbunch/genbunch.hpp"
#include "genbunch/io.hpp"

using namespace genbunch;
using genbunch::io::json;

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string out;
    bool stamp = false;
};

struct ExperimentOptions {
    std::string unitary_file;
    std::optional<std::uint64_t> haar_seed;
    std::optional<int> m;
    std::string sites;
    std::string subset = "1";
    std::string state = "indist";
    std::optional<int> hidden_dim;
    bool normalize = false;
    std::string preset;
};

struct Experiment {
    ComplexMatrix u;
    ExperimentConfig cfg;
    StateSpec spec;
};

class Context {
public:
    Context(const Globals& g, CLI::App* cmd, std::string name) : globals_(g), cmd_(cmd), name_(std::move(name)) {}

    // Draws and reports a seed on first use when --seed was not given.
    std::uint64_t seed()
    {
        if (!seed_) {
            if (globals_.seed) {
                seed_ = *globals_.seed;
            } else {
                std::random_device rd;
                seed_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
                std::cerr << "genbunch: no --seed given, using --seed " << *seed_ << '\n';
            }
        }
        return *seed_;
    }

    int threads() const { return globals_.threads; }

    json manifest() const
    {
        json config = json::object();
        for (const CLI::Option* opt : cmd_->get_options()) {
            if (opt->count() == 0) continue;
            const std::string key = opt->get_name(false, true);
            if (key == "--help") continue;
            const auto& res = opt->results();
            config[key.substr(2)] = opt->get_expected_max() == 0 ? json(true) : json(res.size() == 1 ? res.front() : json(res).dump());
        }
        json m = {{"command", name_}, {"config", config}, {"tool_version", version}};
        m["seed"] = seed_ ? json(*seed_) : json(nullptr);
        m["timestamp"] = globals_.stamp ? json(timestamp()) : json(nullptr);
        return m;
    }

    json document(const std::string& schema) const { return {{"schema", schema}, {"manifest", manifest()}}; }

    void emit(const std::string& text) const
    {
        if (globals_.out.empty()) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream f(globals_.out);
        detail::require(static_cast<bool>(f), "cannot write '" + globals_.out + "'");
        f << text;
    }

    void emit(const json& doc) const { emit(doc.dump(2) + "\n"); }

    // CSV output carries its manifest as a leading comment line.
    void emit_csv(const std::string& schema, const std::string& csv) const
    {
        emit("# " + document(schema).dump() + "\n" + csv);
    }

private:
    static std::string timestamp()
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
        return buf;
    }

    const Globals& globals_;
    CLI::App* cmd_;
    std::string name_;
    std::optional<std::uint64_t> seed_;
};

json to_json(const std::vector<int>& zero_based)
{
    json out = json::array();
    for (int s : zero_based) out.push_back(s + 1);
    return out;
}

int default_hidden_dim(const std::string& kind, int n, const Partition* p, const IrrepDistribution* q)
{
    if (kind == "irrep") return n;
    if (kind == "labelled") return p->length();
    if (kind == "q") {
        int L = 1;
        for (const auto& [lambda, w] : q->q)
            if (w > 1e-12) L = std::max(L, lambda.length());
        return L;
    }
    return 1;
}

StateSpec parse_state(const std::string& text, std::vector<int> sites, std::optional<int> hidden_dim, bool normalize)
{
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    const int n = static_cast<int>(sites.size());
    const auto need_arg = [&] { detail::require(!arg.empty(), "state '" + kind + "' needs an argument, e.g. " + kind + ":..."); };

    if (kind == "indist" || kind == "indistinguishable") {
        detail::require(arg.empty(), "state 'indist' takes no argument");
        return StateSpec::indistinguishable(std::move(sites), hidden_dim.value_or(1));
    }
    if (kind == "irrep" || kind == "labelled") {
        need_arg();
        Partition p = io::parse_partition(arg);
        const int L = hidden_dim.value_or(default_hidden_dim(kind, n, &p, nullptr));
        if (kind == "irrep") return StateSpec::pure_irrep(std::move(p), std::move(sites), L);
        return StateSpec::partially_labelled(std::move(p), std::move(sites), L);
    }
    if (kind == "uniform") {
        need_arg();
        ProbVector alpha = io::parse_prob_vector(arg, normalize);
        detail::require(!hidden_dim || *hidden_dim == static_cast<int>(alpha.size()),
                        "uniform state: --hidden-dim must equal the length of alpha");
        return StateSpec::uniform(std::move(alpha), std::move(sites));
    }
    if (kind == "q") {
        need_arg();
        IrrepDistribution q = io::irrep_distribution_from_json(io::read_json_file(arg));
        const int L = hidden_dim.value_or(default_hidden_dim(kind, n, nullptr, &q));
        return StateSpec::explicit_q(std::move(q), std::move(sites), L);
    }
    throw validation_error("unknown state '" + text + "'; expected indist, irrep:LAMBDA, labelled:MU, uniform:ALPHA or q:FILE");
}

Experiment build_experiment(const ExperimentOptions& o, Context& ctx)
{
    Experiment e;
    if (!o.unitary_file.empty()) {
        e.u = io::matrix_from_json(io::read_json_file(o.unitary_file));
        detail::require(e.u.rows() == e.u.cols(), "unitary file must hold a square matrix");
        check_unitary(e.u);
        detail::require(!o.m || *o.m == e.u.rows(), "--m differs from the size of the unitary in the file");
    } else {
        detail::require(o.m.has_value(), "give --unitary FILE, or --m with --haar-seed or --seed for a Haar-random unitary");
        detail::require(*o.m >= 1, "--m must be at least 1");
        Rng rng = substream(o.haar_seed ? *o.haar_seed : ctx.seed(), 0);
        e.u = haar_unitary(rng, *o.m);
    }
    const int m = static_cast<int>(e.u.rows());
    detail::require(!o.sites.empty(), "--sites is required");
    std::vector<int> sites = io::parse_sites(o.sites, m);
    e.spec = parse_state(o.state, std::move(sites), o.hidden_dim, o.normalize);
    e.cfg.m = m;
    e.cfg.n = e.spec.n();
    e.cfg.L = e.spec.hidden_dim;
    e.cfg.subset = io::parse_subset(o.subset, m);
    e.cfg.validate();
    e.spec.validate(m);
    return e;
}

void add_experiment_options(CLI::App* cmd, ExperimentOptions& o)
{
    cmd->add_option("--unitary", o.unitary_file, "JSON matrix file {rows, cols, re, im}")->check(CLI::ExistingFile);
    cmd->add_option("--haar-seed", o.haar_seed, "seed for a Haar-random unitary (default: --seed)");
    cmd->add_option("--m", o.m, "number of visible modes for a Haar-random unitary");
    cmd->add_option("--sites", o.sites, "input sites, e.g. 1,2,3");
    cmd->add_option("--subset", o.subset, "output subset, e.g. 1-4,7 or all")->capture_default_str();
    cmd->add_option("--state", o.state, "indist | irrep:LAMBDA | labelled:MU | uniform:ALPHA | q:FILE")->capture_default_str();
    cmd->add_option("--hidden-dim", o.hidden_dim, "hidden dimension L");
    cmd->add_flag("--normalize", o.normalize, "rescale a uniform-state alpha to sum to 1");
}

json experiment_json(const Experiment& e)
{
    return {{"m", e.cfg.m},
            {"n", e.cfg.n},
            {"L", e.cfg.L},
            {"sites", to_json(e.spec.sites)},
            {"subset", to_json(e.cfg.subset.indices())},
            {"state", e.spec.kind_name()}};
}

json gram_eigenvalues(const Experiment& e)
{
    const ComplexMatrix g = gram_matrix(e.u, e.spec.sites, e.cfg.subset);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(g, Eigen::EigenvaluesOnly);
    json out = json::array();
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) out.push_back(eig.eigenvalues()(i));
    return out;
}

// --- commands ---------------------------------------------------------------

int cmd_bunch(Context& ctx, const ExperimentOptions& o)
{
    if (!o.preset.empty()) {
        json doc = ctx.document("genbunch.bunch/1");
        detail::require(o.preset == "hom", "unknown preset '" + o.preset + "'; the only preset is hom");
        ComplexMatrix bs(2, 2);
        bs << 1.0, 1.0, 1.0, -1.0;
        bs /= std::sqrt(2.0);
        const ExperimentConfig cfg{2, 2, 2, ModeSubset({0}), 0};
        json results = json::array();
        for (const StateSpec& spec : {StateSpec::indistinguishable({0, 1}, 2), StateSpec::partially_labelled(Partition{1, 1}, {0, 1}, 2)}) {
            results.push_back({{"state", spec.kind_name()},
                               {"q", io::to_json(aux_irrep_distribution(spec))},
                               {"bunching", bunch_probability(bs, cfg, spec)}});
        }
        doc["preset"] = "hom";
        doc["experiment"] = {{"m", 2}, {"n", 2}, {"L", 2}, {"sites", {1, 2}}, {"subset", {1}}, {"unitary", io::to_json(bs)}};
        doc["results"] = results;
        ctx.emit(doc);
        return 0;
    }
    const Experiment e = build_experiment(o, ctx);
    const BunchResult r = bunch_probability_detailed(e.u, e.cfg, e.spec);
    json doc = ctx.document("genbunch.bunch/1");
    doc["experiment"] = experiment_json(e);
    doc["bunching"] = r.value;
    doc["raw"] = r.raw;
    doc["imag_residue"] = r.imag_residue;
    doc["q"] = io::to_json(aux_irrep_distribution(e.spec));
    doc["gram_eigs"] = gram_eigenvalues(e);
    ctx.emit(doc);
    return 0;
}

int cmd_oracle(Context& ctx, const ExperimentOptions& o, std::int64_t cap, bool show_distribution)
{
    const Experiment e = build_experiment(o, ctx);
    const VisibleDistribution dist = oracle_visible_distribution(e.u, e.cfg, e.spec, cap);
    const double dense = bunch_from_distribution(dist, e.cfg.subset);
    const double perm_sum = oracle_bunch_perm_sum(e.u, e.cfg, e.spec.sites, aux_state(e.spec, cap));
    const double closed = bunch_probability(e.u, e.cfg, e.spec);
    json doc = ctx.document("genbunch.oracle/1");
    doc["experiment"] = experiment_json(e);
    doc["bunching"] = {{"dense", dense}, {"perm_sum", perm_sum}, {"closed_form", closed}};
    doc["max_discrepancy"] = std::max({std::abs(dense - perm_sum), std::abs(dense - closed), std::abs(perm_sum - closed)});
    doc["q_extracted"] = io::to_json(extract_q(aux_state(e.spec, cap)));
    if (show_distribution) doc["distribution"] = io::to_json(dist);
    ctx.emit(doc);
    return 0;
}

int cmd_estimate(Context& ctx, const ExperimentOptions& o, int k, int samples)
{
    const Experiment e = build_experiment(o, ctx);
    detail::require(k >= 1 && k <= e.cfg.m, "--k must lie in [1, m]");
    detail::require(samples >= 2, "--samples must be at least 2");
    Rng rng = substream(ctx.seed(), 1);
    const std::vector<Occupation> outcomes = sample_outcomes(rng, e.u, e.cfg, e.spec, samples);
    const double est = subset_avg_estimator(outcomes, k, e.cfg.m);
    const double all = static_cast<double>(binomial(e.cfg.m, k));
    double sq = 0.0;
    for (const Occupation& v : outcomes) {
        const int t = v.occupied_modes();
        const double x = t <= k ? static_cast<double>(binomial(e.cfg.m - t, k - t)) / all : 0.0;
        sq += (x - est) * (x - est);
    }
    const double se = std::sqrt(sq / (samples - 1) / samples);
    const double exact = exact_subset_average(e.u, e.cfg, e.spec, k);
    json doc = ctx.document("genbunch.estimate/1");
    doc["experiment"] = experiment_json(e);
    doc["k"] = k;
    doc["samples"] = samples;
    doc["estimate"] = est;
    doc["std_error"] = se;
    doc["exact_subset_average"] = exact;
    doc["z_score"] = se > 0 ? json((est - exact) / se) : json(nullptr);
    ctx.emit(doc);
    return 0;
}

struct MeanOptions {
    int n = 0;
    int m = 0;
    int k = 0;
    std::string state = "indist";
    std::optional<int> hidden_dim;
    bool normalize = false;
    int mc = 0;
};

int cmd_mean(Context& ctx, const MeanOptions& o)
{
    detail::require(o.n >= 1 && o.n <= o.m, "mean: requires 1 <= n <= m");
    detail::require(o.k >= 0 && o.k <= o.m, "mean: requires 0 <= k <= m");
    std::vector<int> sites(static_cast<std::size_t>(o.n));
    std::iota(sites.begin(), sites.end(), 0);
    const StateSpec spec = parse_state(o.state, sites, o.hidden_dim, o.normalize);
    spec.validate(o.m);
    const IrrepDistribution q = aux_irrep_distribution(spec);
    json doc = ctx.document("genbunch.mean/1");
    doc["experiment"] = {{"m", o.m}, {"n", o.n}, {"k", o.k}, {"L", spec.hidden_dim}, {"state", spec.kind_name()}};
    doc["q"] = io::to_json(q);
    doc["mean"] = mean_bunch_closed(q, o.m, o.k);
    if (o.mc > 0) {
        std::vector<int> first_k(static_cast<std::size_t>(o.k));
        std::iota(first_k.begin(), first_k.end(), 0);
        const ExperimentConfig cfg{o.m, o.n, spec.hidden_dim, ModeSubset(first_k), ctx.seed()};
        const MeanEstimate mc = mean_bunch_mc(cfg, spec, o.mc, ctx.threads());
        doc["manifest"] = ctx.manifest();
        doc["monte_carlo"] = {{"estimate", mc.estimate}, {"std_error", mc.std_error}, {"samples", mc.samples}};
    }
    ctx.emit(doc);
    return 0;
}

struct ThermoOptions {
    std::string levels;
    int n = 0;
    int m = 0;
    int k = 0;
    std::string betas;
    double beta_min = 0.0;
    double beta_max = default_beta_max;
    int points = 50;
    std::optional<double> target;
    std::string format = "csv";
};

int cmd_thermo_curve(Context& ctx, const ThermoOptions& o)
{
    const EnergySpectrum spectrum(io::parse_double_list(o.levels, "energy levels"));
    const std::vector<double> grid =
        o.betas.empty() ? linear_grid(o.beta_min, o.beta_max, o.points) : io::parse_double_list(o.betas, "beta grid");
    const ThermoCurve curve = thermo_curve(spectrum, ThermoParams{o.n, o.m, o.k}, grid, ctx.threads());
    if (o.format == "csv") {
        ctx.emit_csv("genbunch.thermo_curve/1", io::thermo_curve_csv(curve));
        return 0;
    }
    json doc = ctx.document("genbunch.thermo_curve/1");
    doc["betas"] = curve.betas;
    doc["values"] = curve.values;
    ctx.emit(doc);
    return 0;
}

int cmd_thermo_invert(Context& ctx, const ThermoOptions& o)
{
    const EnergySpectrum spectrum(io::parse_double_list(o.levels, "energy levels"));
    double target = 0.0;
    if (o.target) {
        target = *o.target;
    } else {
        const std::string input{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
        json j;
        try {
            j = json::parse(input);
        } catch (const json::exception&) {
            throw validation_error("no --target given and stdin is not JSON of the form {\"target\": y}");
        }
        detail::require(j.is_object() && j.contains("target") && j.at("target").is_number(),
                        "stdin JSON must have a numeric \"target\"");
        target = j.at("target").get<double>();
    }
    const ThermoParams p{o.n, o.m, o.k};
    const double beta = invert_temperature(spectrum, p, target, o.beta_max);
    json doc = ctx.document("genbunch.thermo_invert/1");
    doc["target"] = target;
    doc["beta"] = beta;
    doc["mean_at_beta"] = mean_bunch_at(spectrum, p, beta);
    doc["range"] = {mean_bunch_at(spectrum, p, 0.0), mean_bunch_at(spectrum, p, o.beta_max)};
    ctx.emit(doc);
    return 0;
}

int cmd_lieb(Context& ctx, int n, int trials, bool per_trial)
{
    const LiebReport rep = lieb_scan(ctx.seed(), n, trials, ctx.threads());
    const auto trial_json = [](const LiebTrial& t) {
        return json{{"trial", t.trial}, {"rank", t.rank}, {"gap", t.gap}, {"argmax", io::to_json(t.argmax)}};
    };
    json doc = ctx.document("genbunch.lieb/1");
    doc["config"] = {{"n", n}, {"trials", trials}, {"threshold", lieb_gap_threshold}};
    doc["per_trial"] = json::array();
    if (per_trial)
        for (const auto& t : rep.per_trial) doc["per_trial"].push_back(trial_json(t));
    doc["summary"] = {{"worst", trial_json(rep.worst)}, {"worst_matrix", io::to_json(rep.worst_matrix)}};
    doc["findings"] = json::array();
    for (const auto& t : rep.findings) doc["findings"].push_back(trial_json(t));
    ctx.emit(doc);
    return 0;
}

struct ScanOptions {
    int m = 0;
    int n = 0;
    int L = 2;
    std::string subset = "1";
    int trials = 100;
    bool per_trial = false;
};

ExperimentConfig scan_config(Context& ctx, const ScanOptions& o)
{
    detail::require(o.m >= 1, "--m must be at least 1");
    ExperimentConfig cfg{o.m, o.n, o.L, io::parse_subset(o.subset, o.m), 0};
    cfg.validate();
    cfg.seed = ctx.seed();
    return cfg;
}

json scan_config_json(const ExperimentConfig& cfg, int trials)
{
    return {{"m", cfg.m}, {"n", cfg.n}, {"L", cfg.L}, {"subset", to_json(cfg.subset.indices())}, {"trials", trials}};
}

int cmd_probe(Context& ctx, const ScanOptions& o)
{
    const ExperimentConfig cfg = scan_config(ctx, o);
    const SchurProbeReport rep = schur_convexity_probe(cfg, o.trials, ctx.threads());
    const auto trial_json = [](const SchurProbeTrial& t) {
        return json{{"trial", t.trial}, {"sites", to_json(t.sites)}, {"alpha", t.alpha}, {"alpha_spread", t.alpha_spread},
                    {"b_alpha", t.b_alpha}, {"b_spread", t.b_spread}, {"gap", t.gap}};
    };
    json doc = ctx.document("genbunch.probe/1");
    doc["config"] = scan_config_json(cfg, o.trials);
    doc["per_trial"] = json::array();
    if (o.per_trial)
        for (const auto& t : rep.per_trial) doc["per_trial"].push_back(trial_json(t));
    doc["summary"] = {{"min_gap", rep.min_gap}, {"violations", rep.findings.size()}};
    doc["findings"] = json::array();
    for (const auto& t : rep.findings) doc["findings"].push_back(trial_json(t));
    ctx.emit(doc);
    return 0;
}

int cmd_weak(Context& ctx, const ScanOptions& o)
{
    const ExperimentConfig cfg = scan_config(ctx, o);
    const WeakBunchingReport rep = weak_bunching_scan(cfg, o.trials, ctx.threads());
    const auto trial_json = [](const WeakBunchingTrial& t) {
        return json{{"trial", t.trial}, {"state", t.state}, {"b_state", t.b_state}, {"b_indist", t.b_indist}, {"gap", t.gap}};
    };
    json doc = ctx.document("genbunch.weak/1");
    doc["config"] = scan_config_json(cfg, o.trials);
    doc["per_trial"] = json::array();
    if (o.per_trial)
        for (const auto& t : rep.per_trial) doc["per_trial"].push_back(trial_json(t));
    doc["summary"] = {{"max_gap", rep.max_gap}, {"threshold", refinement_violation_threshold}};
    doc["findings"] = json::array();
    for (const auto& t : rep.findings) doc["findings"].push_back(trial_json(t));
    ctx.emit(doc);
    return 0;
}

int cmd_chars(Context& ctx, int n, const std::string& format)
{
    const CharacterTable t = character_table(n);
    if (format == "csv") {
        ctx.emit_csv("genbunch.chars/1", io::character_table_csv(t));
        return 0;
    }
    json doc = ctx.document("genbunch.chars/1");
    doc["n"] = n;
    doc["classes"] = json::array();
    for (std::size_t c = 0; c < t.classes.size(); ++c)
        doc["classes"].push_back({{"cycle_type", io::to_json(t.classes[c])}, {"size", t.class_sizes[c]}});
    doc["rows"] = json::array();
    for (std::size_t r = 0; r < t.irreps.size(); ++r)
        doc["rows"].push_back({{"irrep", io::to_json(t.irreps[r])}, {"values", t.values[r]}});
    ctx.emit(doc);
    return 0;
}

int run(int argc, char** argv)
{
    CLI::App app{"Generalized bunching probabilities of partially distinguishable bosons"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", version);

    Globals g;
    app.add_option("--seed", g.seed, "master seed for all randomness");
    app.add_option("--threads", g.threads, "worker threads, 0 = all cores (output does not depend on it)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, "write output to FILE instead of stdout");
    app.add_flag("--stamp", g.stamp, "record a UTC timestamp in the manifest");

    ExperimentOptions bunch_opts, oracle_opts, estimate_opts;
    auto* bunch = app.add_subcommand("bunch", "bunching probability from the immanant closed form");
    add_experiment_options(bunch, bunch_opts);
    bunch->add_option("--preset", bunch_opts.preset, "hom: two photons on a 50:50 beamsplitter");

    auto* oracle = app.add_subcommand("oracle", "brute-force Fock-space bunching and visible distribution");
    add_experiment_options(oracle, oracle_opts);
    std::int64_t cap = default_dense_cap;
    bool show_distribution = false;
    oracle->add_option("--cap", cap, "largest allowed single-particle space (m*L)^n")->capture_default_str();
    oracle->add_flag("--distribution", show_distribution, "include the full visible occupation distribution");

    auto* estimate = app.add_subcommand("estimate", "subset-averaged bunching estimated from sampled outcomes");
    add_experiment_options(estimate, estimate_opts);
    int est_k = 1, est_samples = 10000;
    estimate->add_option("--k", est_k, "subset size")->required();
    estimate->add_option("--samples", est_samples, "number of sampled outcomes")->capture_default_str();

    MeanOptions mean_opts;
    auto* mean = app.add_subcommand("mean", "Haar-averaged bunching (closed form, optional Monte Carlo)");
    mean->add_option("--n", mean_opts.n, "number of particles")->required();
    mean->add_option("--m", mean_opts.m, "number of modes")->required();
    mean->add_option("--k", mean_opts.k, "subset size")->required();
    mean->add_option("--state", mean_opts.state, "indist | irrep:LAMBDA | labelled:MU | uniform:ALPHA | q:FILE")->capture_default_str();
    mean->add_option("--hidden-dim", mean_opts.hidden_dim, "hidden dimension L");
    mean->add_flag("--normalize", mean_opts.normalize, "rescale a uniform-state alpha to sum to 1");
    mean->add_option("--mc", mean_opts.mc, "also estimate with this many Haar unitaries");

    ThermoOptions thermo_opts;
    auto* thermo = app.add_subcommand("thermo", "mean bunching as a thermometer for Gibbs hidden states");
    thermo->require_subcommand(1);
    auto* curve = thermo->add_subcommand("curve", "mean bunching over a grid of inverse temperatures");
    auto* invert = thermo->add_subcommand("invert", "inverse temperature from an observed mean bunching");
    for (CLI::App* sub : {curve, invert}) {
        sub->add_option("--levels", thermo_opts.levels, "energy levels, first 0, nondecreasing")->required();
        sub->add_option("--n", thermo_opts.n, "number of particles")->required();
        sub->add_option("--m", thermo_opts.m, "number of modes")->required();
        sub->add_option("--k", thermo_opts.k, "subset size")->required();
        sub->add_option("--beta-max", thermo_opts.beta_max, "upper end of the beta range")->capture_default_str();
    }
    curve->add_option("--betas", thermo_opts.betas, "explicit beta grid, e.g. 0,0.5,1");
    curve->add_option("--beta-min", thermo_opts.beta_min, "lower end of the beta range")->capture_default_str();
    curve->add_option("--points", thermo_opts.points, "grid points")->capture_default_str();
    curve->add_option("--format", thermo_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    invert->add_option("--target", thermo_opts.target, "observed mean bunching (default: stdin JSON {\"target\": y})");

    int lieb_n = 3, lieb_trials = 1000;
    bool lieb_per_trial = false;
    auto* lieb = app.add_subcommand("lieb", "scan random PSD matrices for immanants above the permanent");
    lieb->add_option("--n", lieb_n, "matrix size")->required();
    lieb->add_option("--trials", lieb_trials, "number of random matrices")->capture_default_str();
    lieb->add_flag("--per-trial", lieb_per_trial, "include every trial in the report");

    ScanOptions probe_opts, weak_opts;
    auto* probe = app.add_subcommand("probe", "per-unitary Schur convexity probe for uniform states");
    auto* weak = app.add_subcommand("weak", "scan for states that bunch more than the indistinguishable one");
    for (auto [sub, o] : {std::pair{probe, &probe_opts}, std::pair{weak, &weak_opts}}) {
        sub->add_option("--m", o->m, "number of modes")->required();
        sub->add_option("--n", o->n, "number of particles")->required();
        sub->add_option("--hidden-dim", o->L, "hidden dimension L")->capture_default_str();
        sub->add_option("--subset", o->subset, "output subset, e.g. 1-2")->capture_default_str();
        sub->add_option("--trials", o->trials, "number of random trials")->capture_default_str();
        sub->add_flag("--per-trial", o->per_trial, "include every trial in the report");
    }

    int chars_n = 3;
    std::string chars_format = "csv";
    auto* chars = app.add_subcommand("chars", "character table of the symmetric group");
    chars->add_option("--n", chars_n, "degree")->required();
    chars->add_option("--format", chars_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (bunch->parsed()) {
        Context ctx(g, bunch, "bunch");
        return cmd_bunch(ctx, bunch_opts);
    }
    if (oracle->parsed()) {
        Context ctx(g, oracle, "oracle");
        return cmd_oracle(ctx, oracle_opts, cap, show_distribution);
    }
    if (estimate->parsed()) {
        Context ctx(g, estimate, "estimate");
        return cmd_estimate(ctx, estimate_opts, est_k, est_samples);
    }
    if (mean->parsed()) {
        Context ctx(g, mean, "mean");
        return cmd_mean(ctx, mean_opts);
    }
    if (curve->parsed()) {
        Context ctx(g, curve, "thermo curve");
        return cmd_thermo_curve(ctx, thermo_opts);
    }
    if (invert->parsed()) {
        Context ctx(g, invert, "thermo invert");
        return cmd_thermo_invert(ctx, thermo_opts);
    }
    if (lieb->parsed()) {
        Context ctx(g, lieb, "lieb");
        return cmd_lieb(ctx, lieb_n, lieb_trials, lieb_per_trial);
    }
    if (probe->parsed()) {
        Context ctx(g, probe, "probe");
        return cmd_probe(ctx, probe_opts);
    }
    if (weak->parsed()) {
        Context ctx(g, weak, "weak");
        return cmd_weak(ctx, weak_opts);
    }
    Context ctx(g, chars, "chars");
    return cmd_chars(ctx, chars_n, chars_format);
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << '\n';
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
