#include "qrsk/cli.hpp"
#include "qrsk/dynamics.hpp"
#include "qrsk/moments.hpp"
#include "qrsk/particles.hpp"
#include "qrsk/whittaker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qrsk {

namespace {

using R = Rational;

R rat(long p, long q = 1) { return scalar<R>(p, q); }

std::string str(const R& x) { return x.get_str(); }

std::string str(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string str(const std::vector<R>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

class Recorder {
public:
    Recorder(std::string suite, long max_listed) : max_listed_(max_listed) { rep_.suite = std::move(suite); }

    template <class Describe>
    void check(bool ok, Describe&& describe)
    {
        ++rep_.cases;
        if (ok)
            return;
        ++rep_.failed;
        if (long(rep_.failures.size()) < max_listed_)
            rep_.failures.push_back(describe());
    }

    SuiteReport take() { return std::move(rep_); }

private:
    SuiteReport rep_;
    long max_listed_;
};

long pick(long v, long def) { return v > 0 ? v : def; }

// Sizes are capped so a mistyped flag cannot start an exponential run.
long capped(long v, long def, long cap, const char* flag)
{
    const long x = pick(v, def);
    if (x > cap)
        throw std::invalid_argument(std::string(flag) + " is limited to " + std::to_string(cap) + " here");
    return x;
}

// n values from a list given on the command line: one value is repeated,
// longer lists are cut.
std::vector<R> stretch(const std::vector<R>& v, long n, const std::vector<R>& def, const char* flag)
{
    const std::vector<R>& src = v.empty() ? def : v;
    if (src.size() == 1)
        return std::vector<R>(std::size_t(n), src[0]);
    if (long(src.size()) < n)
        throw std::invalid_argument(std::string(flag) + " needs 1 or at least " + std::to_string(n) + " values");
    return std::vector<R>(src.begin(), src.begin() + n);
}

const std::vector<R>& default_a()
{
    static const std::vector<R> a{rat(1), rat(2, 3), rat(3, 2), rat(3, 4), rat(4, 3), rat(4, 5)};
    return a;
}

void check_q(const R& q)
{
    if (sgn(q) <= 0 || q >= 1)
        throw std::invalid_argument("verify: q must lie in (0,1)");
}

void check_positive(const std::vector<R>& v, const char* flag)
{
    for (const auto& x : v)
        if (sgn(x) <= 0)
            throw std::invalid_argument(std::string(flag) + " values must be positive");
}

struct Tuple {
    R q, par, a;
};

// Three default (q, parameter, a) points, or the single point given by the
// overrides.
std::vector<Tuple> tuples(const SuiteOptions& opt, bool alpha)
{
    const auto& pars = alpha ? opt.alpha : opt.beta;
    if (!opt.q && pars.empty() && opt.a.empty())
        return {{rat(1, 2), rat(1, 3), rat(1)}, {rat(2, 3), rat(1, 5), rat(1, 2)}, {rat(1, 7), rat(1, 2), rat(1)}};
    Tuple t{opt.q.value_or(rat(1, 2)), pars.empty() ? rat(1, 3) : pars[0], opt.a.empty() ? rat(1) : opt.a[0]};
    return {t};
}

void validate(const SuiteOptions& opt)
{
    if (opt.q)
        check_q(*opt.q);
    check_positive(opt.alpha, "--alpha");
    check_positive(opt.beta, "--beta");
    check_positive(opt.a, "--a");
    if (opt.max_part < 0 || opt.levels < 0 || opt.steps < 0)
        throw std::invalid_argument("verify: sizes must be nonnegative");
}

std::vector<Signature> lower_levels(long mp, long j)
{
    return j > 1 ? enumerate_signatures(mp, j - 1) : std::vector<Signature>{Signature{}};
}

SuiteReport main_eq(const SuiteOptions& opt)
{
    Recorder rec("main-eq", opt.max_listed);
    const long mp = capped(opt.max_part, 3, 4, "--max-part");
    const long jmax = capped(opt.levels, 4, 5, "--levels");
    for (DynKind kind : {DynKind::RowBeta, DynKind::ColBeta, DynKind::RowAlpha, DynKind::ColAlpha,
                         DynKind::PushBlockBeta, DynKind::PushBlockAlpha}) {
        const bool exact = kind != DynKind::PushBlockAlpha;
        for (const auto& tp : tuples(opt, is_alpha(kind)))
            for (long j = 1; j <= jmax; ++j) {
                const auto lams = enumerate_signatures(mp, j);
                const auto nbs = lower_levels(mp, j);
                for (const auto& lam : lams)
                    for (const auto& nu : lams)
                        for (const auto& nb : nbs) {
                            auto describe = [&](const std::string& lhs) {
                                return SuiteFailure{kind_name(kind) + " q=" + str(tp.q) + " par=" + str(tp.par) +
                                                        " a=" + str(tp.a) + " lam=" + to_string(lam) +
                                                        " nu=" + to_string(nu) + " nu_bar=" + to_string(nb),
                                                    lhs, "0"};
                            };
                            if (exact) {
                                const R r = main_equation_residual<R>(kind, lam, nu, nb, tp.par, tp.a, tp.q);
                                rec.check(sgn(r) == 0, [&] { return describe(str(r)); });
                            } else {
                                // Push-block alpha is floating only; its kappa sum is truncated.
                                const double r = main_equation_residual<double>(
                                    kind, lam, nu, nb, tp.par.get_d(), tp.a.get_d(), tp.q.get_d());
                                rec.check(std::abs(r) <= 1e-12, [&] { return describe(str(r)); });
                            }
                        }
            }
    }
    return rec.take();
}

SuiteReport gibbs(const SuiteOptions& opt)
{
    Recorder rec("gibbs", opt.max_listed);
    const long nmax = capped(opt.levels, 3, 4, "--levels");
    const long tmax = capped(opt.steps, 3, 4, "--steps");
    const R q = opt.q.value_or(rat(1, 3));
    const std::vector<R> def_beta{rat(1, 2), rat(2, 5), rat(1), rat(1, 3)};
    for (DynKind kind : {DynKind::RowBeta, DynKind::ColBeta, DynKind::PushBlockBeta})
        for (long n = 1; n <= nmax; ++n)
            for (long T = 1; T <= tmax; ++T) {
                const auto a = stretch(opt.a, n, default_a(), "--a");
                const auto betas = stretch(opt.beta, T, def_beta, "--beta");
                const std::string where = kind_name(kind) + " N=" + std::to_string(n) + " T=" + std::to_string(T) +
                                          " q=" + str(q) + " a=" + str(a) + " beta=" + str(betas);
                const auto law = exact_array_law<R>(kind, n, betas, a, q);
                const SpecParams<R> spec{{}, betas};
                R mass(0);
                for (const auto& [arr, w] : law) {
                    mass += w;
                    const R pw = process_weight(arr, a, spec, q);
                    rec.check(w == pw, [&] { return SuiteFailure{where + " array=" + to_json(arr), str(w), str(pw)}; });
                }
                rec.check(mass == 1, [&] { return SuiteFailure{where + " total mass", str(mass), "1"}; });
                rec.check(check_gibbs(law, a, q), [&] { return SuiteFailure{where + " gibbs property", "false", "true"}; });
            }
    return rec.take();
}

SuiteReport cauchy(const SuiteOptions& opt)
{
    Recorder rec("cauchy", opt.max_listed);
    const long mp = capped(opt.max_part, 3, 4, "--max-part");
    const long jmax = capped(opt.levels, 3, 4, "--levels");
    const R q = opt.q.value_or(rat(1, 2));
    const R a = opt.a.empty() ? rat(2, 3) : opt.a[0];
    const R beta = opt.beta.empty() ? rat(1, 3) : opt.beta[0];
    const double alpha = opt.alpha.empty() ? 0.4 : opt.alpha[0].get_d();
    for (long j = 1; j <= jmax; ++j)
        for (const auto& lam : enumerate_signatures(mp, j))
            for (const auto& nb : lower_levels(mp, j)) {
                const std::string where = "lam=" + to_string(lam) + " nu_bar=" + to_string(nb) + " q=" + str(q);
                const auto [bl, br] = skew_cauchy_sides<R>(lam, nb, a, SpecParams<R>{{}, {beta}}, q);
                rec.check(bl == br, [&] {
                    return SuiteFailure{"skew cauchy beta=" + str(beta) + " a=" + str(a) + " " + where, str(bl),
                                        str(br)};
                });
                const auto [al, ar] =
                    skew_cauchy_sides<double>(lam, nb, a.get_d(), SpecParams<double>{{alpha}, {}}, q.get_d(), 40);
                rec.check(std::abs(al - ar) <= 1e-12 * std::max({std::abs(al), std::abs(ar), 1e-300}), [&] {
                    return SuiteFailure{"skew cauchy alpha=" + str(alpha) + " a=" + str(a) + " " + where, str(al),
                                        str(ar)};
                });
                if (j >= 2) {
                    std::vector<R> av = opt.a.size() > 1 ? stretch(opt.a, j, {}, "--a")
                                                         : std::vector<R>{rat(1), a, rat(3, 4), rat(5, 4)};
                    av.resize(std::size_t(j));
                    const auto [il, ir] = intertwining_sides(lam, nb, av, beta, q);
                    rec.check(il == ir, [&] {
                        return SuiteFailure{"intertwining beta=" + str(beta) + " a=" + str(av) + " " + where, str(il),
                                            str(ir)};
                    });
                }
            }
    return rec.take();
}

SuiteReport complementation(const SuiteOptions& opt)
{
    Recorder rec("complementation", opt.max_listed);
    const long mp = capped(opt.max_part, 3, 4, "--max-part");
    const long jmax = capped(opt.levels, 4, 5, "--levels");
    const long box = mp + 1;
    for (const auto& tp : tuples(opt, false))
        for (long j = 1; j <= jmax; ++j)
            for (const auto& lam : enumerate_signatures(mp, j)) {
                auto visit_lb = [&](const Signature& lb) {
                    auto visit_nb = [&](const Signature& nb) {
                        for_each_vstrip_above(lam, [&](const Signature& nu) {
                            const LevelUpdateContext ctx{lb, nb, lam, j};
                            const R x = col_beta_prob(ctx, nu, tp.par, tp.a, tp.q);
                            const R y = complemented_row_beta_prob(ctx, nu, tp.par, tp.a, tp.q, box);
                            rec.check(x == y, [&] {
                                return SuiteFailure{"q=" + str(tp.q) + " beta=" + str(tp.par) + " a=" + str(tp.a) +
                                                        " lam_bar=" + to_string(lb) + " nu_bar=" + to_string(nb) +
                                                        " lam=" + to_string(lam) + " nu=" + to_string(nu),
                                                    str(x), str(y)};
                            });
                        });
                    };
                    for_each_vstrip_above(lb, visit_nb);
                };
                if (j == 1)
                    visit_lb(Signature{});
                else
                    for_each_interlacing_below(lam, visit_lb);
            }
    return rec.take();
}

SuiteReport coupling(const SuiteOptions& opt)
{
    Recorder rec("coupling", opt.max_listed);
    const long nmax = capped(opt.levels, 3, 4, "--levels");
    const long tmax = capped(opt.steps, 3, 4, "--steps");
    for (const auto& tp : tuples(opt, false))
        for (long n = 1; n <= nmax; ++n)
            for (long T = 1; T <= tmax; ++T) {
                const auto a = stretch(opt.a, n, default_a(), "--a");
                const bool ok = coupling_check<R>(n, T, tp.par, a, tp.q);
                rec.check(ok, [&] {
                    return SuiteFailure{"N=" + std::to_string(n) + " T=" + std::to_string(T) + " q=" + str(tp.q) +
                                            " beta=" + str(tp.par) + " a=" + str(a),
                                        "law of t + x(t) under the push process",
                                        "law under the inverted TASEP"};
                });
            }
    return rec.take();
}

std::string moment_where(const MomentQuery& m)
{
    std::ostringstream os;
    os << (m.system == MomentSystem::TwoPart ? "two-part" : "push") << " n=(";
    for (std::size_t i = 0; i < m.n.size(); ++i)
        os << (i ? "," : "") << m.n[i];
    os << ") N=" << m.a.size();
    if (m.system == MomentSystem::TwoPart)
        os << " tasep=" << m.tasep_steps << " push=" << m.push_steps << (m.push_first ? " push-first" : "");
    else
        os << " t=" << m.t;
    os << " q=" << str(m.q) << " beta=" << str(m.par) << " a=" << str(m.a);
    return os.str();
}

SuiteReport moments(const SuiteOptions& opt)
{
    Recorder rec("moments", opt.max_listed);
    const long nmax = capped(opt.levels, 3, 4, "--levels");
    const long tmax = capped(opt.steps, 3, 4, "--steps");
    auto compare = [&](const MomentQuery& m) {
        const R r = nested_moment_residues(m), e = exact_qmoment(m);
        rec.check(r == e, [&] { return SuiteFailure{moment_where(m), str(r), str(e)}; });
    };
    std::vector<std::vector<R>> avecs;
    if (opt.a.empty())
        avecs = {{rat(1), rat(2, 3), rat(1, 2), rat(3, 4)}, {rat(1), rat(1), rat(1), rat(1)}};
    else
        avecs = {stretch(opt.a, nmax, {}, "--a")};
    for (const auto& tp : tuples(opt, false)) {
        for (const auto& av : avecs)
            for (long N = 1; N <= nmax; ++N)
                for (long t = 0; t <= tmax; ++t)
                    for (long n1 = 0; n1 <= N; ++n1)
                        for (long k = 1; k <= 2; ++k)
                            for (long n2 = 0; n2 <= (k == 2 ? n1 : 0); ++n2) {
                                MomentQuery m;
                                m.n = {n1};
                                if (k == 2)
                                    m.n.push_back(n2);
                                m.t = t;
                                m.par = tp.par;
                                m.q = tp.q;
                                m.a.assign(av.begin(), av.begin() + N);
                                compare(m);
                            }
        for (long N = 1; N <= nmax; ++N)
            for (long L = 0; L <= 2; ++L)
                for (long Rs = 0; Rs <= 2; ++Rs)
                    for (long n1 = 1; n1 <= N; ++n1)
                        for (long k = 1; k <= 2; ++k)
                            for (long n2 = 1; n2 <= (k == 2 ? n1 : 1); ++n2) {
                                MomentQuery m;
                                m.system = MomentSystem::TwoPart;
                                m.n = {n1};
                                if (k == 2)
                                    m.n.push_back(n2);
                                m.tasep_steps = Rs;
                                m.push_steps = L;
                                m.par = tp.par;
                                m.q = tp.q;
                                m.a.assign(std::size_t(N), rat(1));
                                compare(m);
                                MomentQuery swapped = m;
                                swapped.push_first = true;
                                const R r1 = nested_moment_residues(m), r2 = nested_moment_residues(swapped);
                                rec.check(r1 == r2, [&] {
                                    return SuiteFailure{moment_where(swapped) + " order swap", str(r2), str(r1)};
                                });
                                compare(swapped);
                            }
    }
    return rec.take();
}

R random_unit_rational(Rng& rng)
{
    std::uniform_int_distribution<long> den(2, 13);
    const long d = den(rng);
    std::uniform_int_distribution<long> num(1, d - 1);
    return rat(num(rng), d);
}

SuiteReport qbinom(const SuiteOptions& opt)
{
    Recorder rec("qbinom", opt.max_listed);
    Rng rng(opt.seed);
    const long top = capped(opt.max_part, 4, 5, "--max-part");
    std::vector<R> qs;
    if (opt.q)
        qs = {*opt.q};
    else
        for (int i = 0; i < 5; ++i)
            qs.push_back(random_unit_rational(rng));
    for (const R& q : qs) {
        for (long s = 0; s <= top; ++s)
            for (long l = 0; l <= top; ++l)
                for (long Rf = 0; Rf <= top; ++Rf)
                    for (long b = 0; b <= top; ++b)
                        for (long h = s; h <= top; ++h) {
                            const auto [x, y] = kr1_sides(s, l, Rf, b, h, q);
                            rec.check(x == y, [&] {
                                std::ostringstream os;
                                os << "kr1 q=" << str(q) << " s=" << s << " l=" << l << " R=" << Rf << " b=" << b
                                   << " h=" << h;
                                return SuiteFailure{os.str(), str(x), str(y)};
                            });
                        }
        for (long A = 0; A <= top; ++A)
            for (long B = 0; B <= top; ++B)
                for (long C = 0; C <= top; ++C)
                    for (long l = 0; l <= top; ++l)
                        for (long r = 0; r <= top; ++r) {
                            if (A + B < r || B + C < l)
                                continue;
                            const R v = kr2_sum(A, B, C, l, r, q);
                            rec.check(v == 1, [&] {
                                std::ostringstream os;
                                os << "kr2 q=" << str(q) << " A=" << A << " B=" << B << " C=" << C << " l=" << l
                                   << " r=" << r;
                                return SuiteFailure{os.str(), str(v), "1"};
                            });
                        }
        // Free parameters in place of the powers of q.
        const R c = random_unit_rational(rng), d = random_unit_rational(rng), e = random_unit_rational(rng);
        for (long n = 0; n <= top; ++n) {
            const auto [x, y] = kr1_general_sides(n, c, d, e, q);
            rec.check(x == y, [&] {
                return SuiteFailure{"kr1 general n=" + std::to_string(n) + " c=" + str(c) + " d=" + str(d) +
                                        " e=" + str(e) + " q=" + str(q),
                                    str(x), str(y)};
            });
        }
        for (long B = 0; B <= top; ++B)
            for (long l = 0; l <= top; ++l) {
                const R v = kr2_general_sum(B, l, c, d, e, q);
                rec.check(v == 1, [&] {
                    return SuiteFailure{"kr2 general B=" + std::to_string(B) + " l=" + std::to_string(l) +
                                            " alpha=" + str(c) + " beta=" + str(d) + " gamma=" + str(e) +
                                            " q=" + str(q),
                                        str(v), "1"};
                });
            }
    }
    return rec.take();
}

SuiteReport grsk_lgv(const SuiteOptions& opt)
{
    Recorder rec("grsk-lgv", opt.max_listed);
    const long nmax = capped(opt.levels, 4, 6, "--levels");
    const long tmax = capped(opt.steps, 5, 6, "--steps");
    Rng rng(opt.seed);
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
    for (long n = 1; n <= nmax; ++n)
        for (long t = 1; t <= tmax; ++t)
            for (int rep = 0; rep < 5; ++rep) {
                std::vector<std::vector<double>> W(static_cast<std::size_t>(t));
                for (auto& col : W)
                    for (long i = 0; i < n; ++i)
                        col.push_back(0.2 + 2.0 * rng.uniform());
                const std::string where =
                    "n=" + std::to_string(n) + " t=" + std::to_string(t) + " rep=" + std::to_string(rep);
                const PolymerEnv lg{PolymerMode::LogGamma, W}, sw{PolymerMode::StrictWeak, W};
                RealArray z(n), y(n);
                for (const auto& col : W) {
                    z = grsk_row_insert(z, col);
                    y = grsk_col_insert(y, col);
                }
                for (long j = 1; j <= n; ++j)
                    for (long k = 1; k <= j; ++k) {
                        const std::string at = where + " j=" + std::to_string(j) + " k=" + std::to_string(k);
                        if (t >= k) {
                            const double r = lgv_partition(lg, j, k, t) / lgv_partition(lg, j, k - 1, t);
                            rec.check(rel(z.at(j, k), r) <= 1e-10,
                                      [&] { return SuiteFailure{"row " + at, str(z.at(j, k)), str(r)}; });
                        }
                        if (t >= j - k + 1) {
                            const double r = lgv_partition(sw, j, k, t) / lgv_partition(sw, j, k - 1, t);
                            rec.check(rel(y.at(j, k), r) <= 1e-10,
                                      [&] { return SuiteFailure{"column " + at, str(y.at(j, k)), str(r)}; });
                        }
                        for (const PolymerEnv* env : {&lg, &sw}) {
                            const double x = lgv_partition(*env, j, k, t), d = lgv_determinant(*env, j, k, t);
                            const bool ok = x > 0 ? rel(x, d) <= 1e-12 : std::abs(d) <= 1e-12;
                            rec.check(ok, [&] {
                                return SuiteFailure{std::string(env == &lg ? "log-gamma" : "strict-weak") +
                                                        " enumeration vs determinant " + at,
                                                    str(x), str(d)};
                            });
                        }
                    }
                // Transfer relation for one insertion into the current array.
                for (long k = 1; k <= n; ++k) {
                    const std::vector<double> a(W[0].begin() + (k - 1), W[0].end());
                    const double res = transfer_matrix_residual(n, k, y.word(k), a);
                    rec.check(res <= 1e-12, [&] {
                        return SuiteFailure{"transfer relation " + where + " k=" + std::to_string(k), str(res), "0"};
                    });
                }
                const double res = transfer_product_residual(W);
                rec.check(res <= 1e-10, [&] { return SuiteFailure{"transfer product " + where, str(res), "0"}; });
            }
    return rec.take();
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"main-eq", "gibbs",   "cauchy", "complementation",
                                                "coupling", "moments", "qbinom", "grsk-lgv"};
    return names;
}

SuiteReport run_suite(const std::string& suite, const SuiteOptions& opt)
{
    validate(opt);
    static const std::map<std::string, std::function<SuiteReport(const SuiteOptions&)>> table{
        {"main-eq", main_eq},   {"gibbs", gibbs},     {"cauchy", cauchy}, {"complementation", complementation},
        {"coupling", coupling}, {"moments", moments}, {"qbinom", qbinom}, {"grsk-lgv", grsk_lgv}};
    const auto it = table.find(suite);
    if (it == table.end())
        throw std::invalid_argument("unknown suite: " + suite);
    return it->second(opt);
}

} // namespace qrsk
