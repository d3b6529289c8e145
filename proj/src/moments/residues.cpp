#include "qrsk/moments.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace qrsk {

namespace {

// c[0] + sum_v c[v] z_v, normalized so that the coefficient of the
// highest variable present is 1.
using Form = std::vector<Rational>;
using Powers = std::map<Form, long>;
using Expr = std::map<Powers, Rational>;

long top_var(const Form& f)
{
    for (long v = long(f.size()) - 1; v >= 1; --v)
        if (sgn(f[std::size_t(v)]) != 0)
            return v;
    return 0;
}

// Multiplies (coef, powers) by f^e, folding the normalizing scalar.
void mul_form(Rational& coef, Powers& pw, Form f, long e)
{
    if (e == 0)
        return;
    const long v = top_var(f);
    const Rational lead = f[std::size_t(v)];
    if (sgn(lead) == 0)
        throw std::domain_error("residue engine: vanishing factor");
    coef *= pow_int(lead, e);
    if (v == 0)
        return;
    for (auto& c : f)
        c /= lead;
    long& slot = pw[f];
    slot += e;
    if (slot == 0)
        pw.erase(f);
}

Rational gen_binom(long e, long m)
{
    Rational r(1);
    for (long i = 0; i < m; ++i)
        r *= scalar<Rational>(e - i, i + 1);
    return r;
}

// Residue at z_var = r of one term. The pole factor is (z_var - r)^{-p}.
void residue_at(const Powers& pw, const Rational& coef, long var, const Rational& r, long k, Expr& out)
{
    const std::size_t len = std::size_t(k + 1);
    long order = 0;
    Rational base = coef;
    Powers rest;
    // Cross factors: G + w with G a form in lower variables.
    std::vector<std::pair<Form, long>> cross;
    for (const auto& [f, e] : pw) {
        if (top_var(f) != var) {
            rest[f] = e;
            continue;
        }
        bool single = true;
        for (long v = 1; v < var; ++v)
            if (sgn(f[std::size_t(v)]) != 0)
                single = false;
        if (single) {
            const Rational d = f[0] + r;
            if (sgn(d) == 0) {
                order = -e;
                continue;
            }
            base *= pow_int(d, e);
            cross.push_back({Form(len), e});
            cross.back().first[0] = d;
            continue;
        }
        Form g = f;
        g[std::size_t(var)] = 0;
        g[0] += r;
        cross.push_back({g, e});
    }
    if (order <= 0)
        return;
    const long deg = order - 1;
    // Expand prod (G + w)^e to degree deg; constant G are folded numerically.
    std::vector<std::pair<Powers, std::vector<Rational>>> partial;
    partial.push_back({rest, std::vector<Rational>(std::size_t(deg + 1))});
    partial.back().second[0] = base;
    for (const auto& [g, e] : cross) {
        const bool constant = top_var(g) == 0;
        std::vector<std::pair<Powers, std::vector<Rational>>> next;
        for (const auto& [p, series] : partial) {
            for (long m = 0; m <= deg; ++m) {
                Rational c = gen_binom(e, m);
                if (sgn(c) == 0)
                    break;
                Powers p2 = p;
                Rational scale(1);
                if (constant) {
                    // (d + w)^e with d^e already in base: coefficient d^{-m}.
                    scale = c / pow_int(g[0], m);
                } else {
                    scale = c;
                    mul_form(scale, p2, g, e - m);
                }
                std::vector<Rational> s2(std::size_t(deg + 1));
                for (long i = 0; i + m <= deg; ++i)
                    s2[std::size_t(i + m)] = series[std::size_t(i)] * scale;
                next.push_back({std::move(p2), std::move(s2)});
            }
        }
        partial = std::move(next);
    }
    for (const auto& [p, series] : partial) {
        const Rational& c = series[std::size_t(deg)];
        if (sgn(c) == 0)
            continue;
        Rational& slot = out[p];
        slot += c;
        if (sgn(slot) == 0)
            out.erase(p);
    }
}

Form single(long k, long var, const Rational& c0, const Rational& cv)
{
    Form f(std::size_t(k + 1));
    f[0] = c0;
    f[std::size_t(var)] = cv;
    return f;
}

} // namespace

void MomentQuery::validate() const
{
    if (n.empty())
        throw std::invalid_argument("moment query: k must be at least 1");
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 0 || n[i] > long(a.size()))
            throw std::invalid_argument("moment query: n_i outside [0, N]");
        if (i > 0 && n[i] > n[i - 1])
            throw std::invalid_argument("moment query: n must be weakly decreasing");
    }
    if (sgn(q) <= 0 || q >= 1)
        throw std::invalid_argument("moment query: need 0 < q < 1");
    for (const auto& ai : a)
        if (sgn(ai) <= 0)
            throw std::invalid_argument("moment query: a_i must be positive");
    if (system == MomentSystem::TwoPart)
        for (const auto& ai : a)
            if (ai != 1)
                throw std::invalid_argument("moment query: the two-part process has a = 1");
    if (t < 0 || tasep_steps < 0 || push_steps < 0)
        throw std::invalid_argument("moment query: negative time");
}

Rational nested_moment_residues(const MomentQuery& qr)
{
    qr.validate();
    const long k = long(qr.n.size());
    const Rational& q = qr.q;
    const Rational& par = qr.par;

    Rational coef = pow_int(q, k * (k - 1) / 2);
    if (k % 2)
        coef = -coef;
    Powers pw;
    for (long A = 1; A <= k; ++A)
        for (long B = A + 1; B <= k; ++B) {
            Form num(std::size_t(k + 1)), den(std::size_t(k + 1));
            num[std::size_t(A)] = 1;
            num[std::size_t(B)] = -1;
            den[std::size_t(A)] = 1;
            den[std::size_t(B)] = -q;
            mul_form(coef, pw, num, 1);
            mul_form(coef, pw, den, -1);
        }
    std::set<Rational> excluded{Rational(0)};
    for (long j = 1; j <= k; ++j) {
        for (long i = 1; i <= qr.n[std::size_t(j - 1)]; ++i)
            mul_form(coef, pw, single(k, j, Rational(1), -qr.a[std::size_t(i - 1)]), -1);
        mul_form(coef, pw, single(k, j, Rational(0), Rational(1)), -1);
        auto push_factor = [&](long steps) {
            // (1 + beta/(q z)) / (1 + beta/z) = (z + beta/q) / (z + beta)
            mul_form(coef, pw, single(k, j, par / q, Rational(1)), steps);
            mul_form(coef, pw, single(k, j, par, Rational(1)), -steps);
        };
        auto tasep_factor = [&](long steps) {
            mul_form(coef, pw, single(k, j, Rational(1), q * par), steps);
            mul_form(coef, pw, single(k, j, Rational(1), par), -steps);
        };
        switch (qr.system) {
        case MomentSystem::BernoulliPush:
            push_factor(qr.t);
            excluded.insert(-par);
            break;
        case MomentSystem::TwoPart:
            if (qr.push_first) {
                push_factor(qr.push_steps);
                tasep_factor(qr.tasep_steps);
            } else {
                tasep_factor(qr.tasep_steps);
                push_factor(qr.push_steps);
            }
            excluded.insert(-par);
            if (sgn(par) != 0)
                excluded.insert(-1 / par);
            break;
        case MomentSystem::GeometricPush:
            // 1 / (1 - alpha/(q z))^t = z^t / (z - alpha/q)^t
            mul_form(coef, pw, single(k, j, Rational(0), Rational(1)), qr.t);
            mul_form(coef, pw, single(k, j, -par / q, Rational(1)), -qr.t);
            excluded.insert(par / q);
            break;
        }
    }

    Expr expr;
    if (sgn(coef) != 0)
        expr[pw] = coef;
    for (long A = k; A >= 1; --A) {
        // Points enclosed by the contour of z_A.
        std::set<Rational> inside;
        for (const auto& ai : qr.a)
            for (long m = 0; m <= k - A; ++m)
                inside.insert(pow_int(q, m) / ai);
        for (const auto& e : excluded)
            if (inside.count(e))
                throw std::domain_error("nested_moment_residues: an excluded pole meets the contour set");
        Expr next;
        for (const auto& [p, c] : expr) {
            std::set<Rational> roots;
            for (const auto& [f, e] : p) {
                if (e >= 0 || top_var(f) != A)
                    continue;
                bool lone = true;
                for (long v = 1; v < A; ++v)
                    if (sgn(f[std::size_t(v)]) != 0)
                        lone = false;
                if (lone && inside.count(-f[0]))
                    roots.insert(-f[0]);
            }
            for (const auto& r : roots)
                residue_at(p, c, A, r, k, next);
        }
        expr = std::move(next);
    }
    Rational total(0);
    for (const auto& [p, c] : expr) {
        if (!p.empty())
            throw std::logic_error("nested_moment_residues: unresolved variables");
        total += c;
    }
    return total;
}

} // namespace qrsk
