#include "qrsk/cli.hpp"
#include "qrsk/dynamics.hpp"
#include "qrsk/moments.hpp"
#include "qrsk/particles.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qrsk {

namespace {

// Raised for configuration problems found after parsing; maps to exit 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<Rational> parse_list(const std::vector<std::string>& texts)
{
    std::vector<Rational> out;
    for (const auto& t : texts)
        out.push_back(parse_rational(t));
    return out;
}

std::vector<double> to_doubles(const std::vector<Rational>& v)
{
    std::vector<double> out;
    for (const auto& x : v)
        out.push_back(x.get_d());
    return out;
}

// n values: the list itself, one value repeated, or the default.
std::vector<double> per_index(const std::vector<double>& v, long n, double def, const char* flag)
{
    if (v.empty())
        return std::vector<double>(std::size_t(n), def);
    if (v.size() == 1)
        return std::vector<double>(std::size_t(n), v[0]);
    if (long(v.size()) != n)
        throw UsageError(std::string(flag) + " takes 1 or " + std::to_string(n) + " values");
    return v;
}

// Fewest significant digits that read back to the same double.
std::string shortest(double x)
{
    char buf[40];
    for (int p = 6; p <= 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, x);
        if (std::strtod(buf, nullptr) == x)
            break;
    }
    return buf;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open " + path + " for writing");
    f << text;
}

class FaultGuard {
public:
    explicit FaultGuard(Fault f) { set_fault(f); }
    ~FaultGuard() { set_fault(Fault::None); }
};

struct VerifyArgs {
    std::vector<std::string> suites;
    std::string q;
    std::vector<std::string> alpha, beta, a;
    long max_part = 0, levels = 0, steps = 0, max_listed = 20;
    std::uint64_t seed = 1;
    std::string out, mode = "exact", fault;
};

int cmd_verify(const VerifyArgs& v, std::ostream& out, std::ostream& err)
{
    if (v.mode != "exact")
        throw UsageError("verify runs in exact mode");
    Fault fault = Fault::None;
    if (v.fault == "row-beta-f")
        fault = Fault::RowBetaF;
    else if (!v.fault.empty())
        throw UsageError("unknown fault: " + v.fault);
    FaultGuard guard(fault);

    SuiteOptions opt;
    if (!v.q.empty())
        opt.q = parse_rational(v.q);
    opt.alpha = parse_list(v.alpha);
    opt.beta = parse_list(v.beta);
    opt.a = parse_list(v.a);
    opt.max_part = v.max_part;
    opt.levels = v.levels;
    opt.steps = v.steps;
    opt.seed = v.seed;
    opt.max_listed = v.max_listed;

    std::vector<std::string> names = v.suites;
    if (names.size() == 1 && names[0] == "all")
        names = suite_names();
    std::string text;
    bool ok = true;
    for (const auto& name : names) {
        const SuiteReport rep = run_suite(name, opt);
        err << rep.suite << ": " << rep.cases << " cases, " << rep.failed << " failed\n";
        ok = ok && rep.ok();
        text += suite_report_json(rep) + "\n";
    }
    write_text(v.out, text, out);
    return ok ? 0 : 1;
}

struct SimulateArgs {
    std::string system;
    std::string q = "1/2";
    std::vector<std::string> alpha, beta, a;
    long levels = 3, steps = 10;
    std::uint64_t seed = 1;
    std::string out, mode = "float";
};

bool is_particle_system(const std::string& s)
{
    return s == "bernoulli-qpush" || s == "bernoulli-qtasep" || s == "geometric-qpush" || s == "geometric-qtasep";
}

int cmd_simulate(const SimulateArgs& s, std::ostream& out)
{
    if (s.mode != "float")
        throw UsageError("simulate samples in floating mode; the alpha laws need (a;q)_inf");
    if (s.levels < 1 || s.steps < 0)
        throw UsageError("need --levels >= 1 and --steps >= 0");
    const bool particles = is_particle_system(s.system);
    const bool alpha = particles ? s.system.rfind("geometric", 0) == 0 : is_alpha(parse_kind(s.system));
    if (alpha && !s.beta.empty())
        throw UsageError(s.system + " takes --alpha");
    if (!alpha && !s.alpha.empty())
        throw UsageError(s.system + " takes --beta");

    const double q = parse_rational(s.q).get_d();
    if (!(q >= 0 && q < 1))
        throw UsageError("q must lie in [0,1)");
    const auto pars = per_index(to_doubles(parse_list(alpha ? s.alpha : s.beta)), s.steps, 0.5,
                                alpha ? "--alpha" : "--beta");
    const auto a = per_index(to_doubles(parse_list(s.a)), s.levels, 1.0, "--a");
    for (double x : pars)
        if (!(x > 0))
            throw UsageError("time parameters must be positive");
    for (double x : a)
        if (!(x > 0))
            throw UsageError("--a values must be positive");
    if (alpha)
        for (double p : pars)
            for (double x : a)
                if (!(p * x < 1))
                    throw UsageError("alpha dynamics need alpha * a_j < 1");

    Rng rng(s.seed);
    std::ostringstream csv;
    nlohmann::ordered_json fin;
    fin["system"] = s.system;
    fin["seed"] = s.seed;
    fin["q"] = q;
    fin["steps"] = s.steps;
    if (particles) {
        std::vector<ParticleConfig> path;
        ParticleConfig cfg = ParticleConfig::step(s.levels);
        for (long t = 0; t < s.steps; ++t) {
            const double p = pars[std::size_t(t)];
            if (s.system == "bernoulli-qpush")
                cfg = bernoulli_qpush_step(cfg, p, a, q, rng);
            else if (s.system == "bernoulli-qtasep")
                cfg = bernoulli_qtasep_step(cfg, p, a, q, rng);
            else if (s.system == "geometric-qpush")
                cfg = geometric_qpush_step(cfg, p, a, q, rng);
            else
                cfg = geometric_qtasep_step(cfg, p, a, q, rng);
            path.push_back(cfg);
        }
        write_trajectory_csv(csv, path);
        fin["x"] = cfg.x;
    } else {
        const DynKind kind = parse_kind(s.system);
        InterlacingArray arr = InterlacingArray::zero(s.levels);
        std::vector<std::vector<long>> inputs;
        csv << "t,j,i,part\n";
        for (long t = 1; t <= s.steps; ++t) {
            StepResult r = sample_step(kind, arr, pars[std::size_t(t - 1)], a, q, rng);
            arr = std::move(r.array);
            inputs.push_back(std::move(r.inputs));
            for (long j = 1; j <= arr.depth(); ++j)
                for (long i = 1; i <= j; ++i)
                    csv << t << ',' << j << ',' << i << ',' << part(arr.level(j), i) << '\n';
        }
        fin["levels"] = arr.levels;
        fin["inputs"] = inputs;
    }
    write_text(s.out + ".csv", csv.str(), out);
    write_text(s.out + ".json", fin.dump(2) + "\n", out);
    return 0;
}

struct PolymerArgs {
    std::string kind = "row-alpha";
    long levels = 1, steps = 1, replicas = 1000, bootstrap = 50, threads = 0;
    std::vector<double> theta, theta_hat, eps;
    std::uint64_t seed = 1;
    std::string out, samples, mode = "float";
};

int cmd_polymer_limit(const PolymerArgs& p, std::ostream& out)
{
    if (p.mode != "float")
        throw UsageError("polymer-limit runs in floating mode");
    if (p.levels < 1 || p.steps < 1)
        throw UsageError("need --levels >= 1 and --steps >= 1");
    ScalingConfig cfg;
    cfg.kind = parse_kind(p.kind);
    cfg.n = p.levels;
    cfg.t = p.steps;
    cfg.thetas = per_index(p.theta, p.levels, 1.5, "--theta");
    cfg.theta_hats = per_index(p.theta_hat, p.steps, 1.0, "--theta-hat");
    cfg.eps_list = p.eps.empty() ? std::vector<double>{0.05} : p.eps;
    cfg.replicas = p.replicas;
    cfg.seed = p.seed;
    cfg.bootstrap = p.bootstrap;
    cfg.threads = p.threads;
    cfg.keep_samples = !p.samples.empty();
    const ScalingReport rep = scaling_limit_experiment(cfg);
    write_text(p.out, scaling_report_json(rep) + "\n", out);
    if (!p.samples.empty()) {
        std::ostringstream csv;
        csv << "eps,j,k,t,side,value\n";
        for (const auto& run : rep.runs)
            for (const auto& e : run.entries) {
                for (double x : e.samples_prelimit)
                    csv << shortest(run.eps) << ',' << e.j << ',' << e.k << ',' << e.t << ",prelimit," << shortest(x)
                        << '\n';
                for (double x : e.samples_polymer)
                    csv << shortest(run.eps) << ',' << e.j << ',' << e.k << ',' << e.t << ",polymer," << shortest(x)
                        << '\n';
            }
        write_text(p.samples, csv.str(), out);
    }
    return 0;
}

struct MomentArgs {
    std::string system = "bernoulli-qpush";
    std::vector<long> n;
    long steps = 1, tasep_steps = 0, push_steps = 0, cap = 30;
    bool push_first = false;
    std::string q = "1/2", par;
    std::vector<std::string> a;
    std::string out, mode = "exact";
};

int cmd_moment(const MomentArgs& m, std::ostream& out)
{
    if (m.mode != "exact" && m.mode != "float")
        throw UsageError("--mode is exact or float");
    MomentQuery qr;
    if (m.system == "bernoulli-qpush")
        qr.system = MomentSystem::BernoulliPush;
    else if (m.system == "two-part")
        qr.system = MomentSystem::TwoPart;
    else if (m.system == "geometric-qpush")
        qr.system = MomentSystem::GeometricPush;
    else
        throw UsageError("unknown moment system: " + m.system);
    qr.n = m.n;
    qr.t = m.steps;
    qr.tasep_steps = m.tasep_steps;
    qr.push_steps = m.push_steps;
    qr.push_first = m.push_first;
    qr.q = parse_rational(m.q);
    qr.par = m.par.empty() ? scalar<Rational>(1, 3) : parse_rational(m.par);
    qr.a = parse_list(m.a);
    if (qr.a.empty())
        qr.a.assign(std::size_t(qr.n.empty() ? 1 : *std::max_element(qr.n.begin(), qr.n.end())), Rational(1));

    const Rational res = nested_moment_residues(qr);
    nlohmann::ordered_json j;
    j["system"] = m.system;
    j["n"] = qr.n;
    j["residue"] = res.get_str();
    j["decimal"] = res.get_d();
    bool ok = true;
    if (qr.system != MomentSystem::GeometricPush) {
        const Rational e = exact_qmoment(qr);
        j["oracle"] = e.get_str();
        ok = e == res;
    } else if (m.mode == "float") {
        bool converged = false;
        const double b = geometric_qmoment_bruteforce(qr, m.cap, &converged);
        j["oracle"] = b;
        j["converged"] = converged;
        ok = converged && std::abs(b - res.get_d()) <= 1e-9 * std::max(1.0, std::abs(b));
    } else {
        // The geometric oracle sums a truncated infinite law.
        j["oracle"] = nullptr;
    }
    j["match"] = ok;
    write_text(m.out, j.dump(2) + "\n", out);
    return ok ? 0 : 1;
}

std::string joined(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : ", ") + x;
    return s;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"q-randomized RSK dynamics: samplers, exact verification suites, polymer limits"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run exact verification suites (" + joined(suite_names()) + ", all)");
    verify->add_option("suite", va.suites, "suite names")->required();
    verify->add_option("--q", va.q, "q as p/q or decimal");
    verify->add_option("--alpha", va.alpha, "alpha parameter");
    verify->add_option("--beta", va.beta, "beta parameter, repeatable per time step");
    verify->add_option("--a", va.a, "a parameter, repeatable per level");
    verify->add_option("--max-part", va.max_part, "largest part in enumerations");
    verify->add_option("--levels", va.levels, "largest level N");
    verify->add_option("--steps", va.steps, "largest time T");
    verify->add_option("--seed", va.seed, "seed for randomized parameter points");
    verify->add_option("--max-listed", va.max_listed, "failures listed per suite");
    verify->add_option("--out", va.out, "report path (default stdout)");
    verify->add_option("--mode", va.mode, "exact");
    verify->add_option("--inject-fault", va.fault)->group("");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "sample a dynamics or particle system from the zero array");
    simulate->add_option("system", sa.system,
                         "row-alpha, col-alpha, row-beta, col-beta, push-block-alpha, push-block-beta, "
                         "bernoulli-qpush, bernoulli-qtasep, geometric-qpush, geometric-qtasep")
        ->required();
    simulate->add_option("--q", sa.q, "q in [0,1)");
    simulate->add_option("--alpha", sa.alpha, "alpha per time step (one value is repeated)");
    simulate->add_option("--beta", sa.beta, "beta per time step (one value is repeated)");
    simulate->add_option("--a", sa.a, "a per level (one value is repeated)");
    simulate->add_option("--levels", sa.levels, "number of levels or particles");
    simulate->add_option("--steps", sa.steps, "number of time steps");
    simulate->add_option("--seed", sa.seed, "seed");
    simulate->add_option("--out", sa.out, "output prefix: writes PREFIX.csv and PREFIX.json")->required();
    simulate->add_option("--mode", sa.mode, "float");

    PolymerArgs pa;
    auto* polymer = app.add_subcommand("polymer-limit", "scaled alpha dynamics against the polymer side");
    polymer->add_option("--kind", pa.kind, "row-alpha or col-alpha");
    polymer->add_option("--levels", pa.levels, "n");
    polymer->add_option("--steps", pa.steps, "t");
    polymer->add_option("--theta", pa.theta, "theta per level (one value is repeated)");
    polymer->add_option("--theta-hat", pa.theta_hat, "theta_hat per step (one value is repeated)");
    polymer->add_option("--eps", pa.eps, "epsilon, repeatable");
    polymer->add_option("--replicas", pa.replicas, "replicas per side");
    polymer->add_option("--bootstrap", pa.bootstrap, "bootstrap rounds for the KS noise");
    polymer->add_option("--threads", pa.threads, "worker threads (0: hardware)");
    polymer->add_option("--seed", pa.seed, "seed");
    polymer->add_option("--out", pa.out, "report path (default stdout)");
    polymer->add_option("--samples", pa.samples, "optional CSV of raw log samples");
    polymer->add_option("--mode", pa.mode, "float");

    MomentArgs ma;
    auto* moment = app.add_subcommand("moment", "q-moment by iterated residues against the exact law");
    moment->add_option("--system", ma.system, "bernoulli-qpush, two-part or geometric-qpush");
    moment->add_option("--n", ma.n, "particle indices n_1 >= n_2 >= ...")->required();
    moment->add_option("--steps", ma.steps, "time t");
    moment->add_option("--tasep-steps", ma.tasep_steps, "two-part: TASEP steps");
    moment->add_option("--push-steps", ma.push_steps, "two-part: PushTASEP steps");
    moment->add_flag("--push-first", ma.push_first, "two-part: PushTASEP steps first");
    moment->add_option("--q", ma.q, "q");
    moment->add_option("--beta,--alpha", ma.par, "beta, or alpha for the geometric system");
    moment->add_option("--a", ma.a, "a per particle");
    moment->add_option("--cap", ma.cap, "geometric oracle truncation");
    moment->add_option("--out", ma.out, "report path (default stdout)");
    moment->add_option("--mode", ma.mode, "exact or float");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed())
            return cmd_verify(va, out, err);
        if (simulate->parsed())
            return cmd_simulate(sa, out);
        if (polymer->parsed())
            return cmd_polymer_limit(pa, out);
        if (moment->parsed())
            return cmd_moment(ma, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace qrsk
