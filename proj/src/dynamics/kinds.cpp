#include "qrsk/dynamics.hpp"

#include <atomic>
#include <stdexcept>

namespace qrsk {

namespace {
std::atomic<int> g_fault{0};
}

void set_fault(Fault f) { g_fault.store(int(f)); }
Fault current_fault() { return Fault(g_fault.load()); }

bool is_alpha(DynKind kind)
{
    return kind == DynKind::RowAlpha || kind == DynKind::ColAlpha || kind == DynKind::PushBlockAlpha;
}

bool is_rsk(DynKind kind) { return kind != DynKind::PushBlockAlpha && kind != DynKind::PushBlockBeta; }

std::string kind_name(DynKind kind)
{
    switch (kind) {
    case DynKind::RowAlpha: return "row-alpha";
    case DynKind::ColAlpha: return "col-alpha";
    case DynKind::RowBeta: return "row-beta";
    case DynKind::ColBeta: return "col-beta";
    case DynKind::PushBlockAlpha: return "push-block-alpha";
    case DynKind::PushBlockBeta: return "push-block-beta";
    }
    return "?";
}

DynKind parse_kind(const std::string& name)
{
    for (DynKind k : {DynKind::RowAlpha, DynKind::ColAlpha, DynKind::RowBeta, DynKind::ColBeta,
                      DynKind::PushBlockAlpha, DynKind::PushBlockBeta})
        if (kind_name(k) == name)
            return k;
    throw std::invalid_argument("unknown dynamics: " + name);
}

bool LevelUpdateContext::admissible(bool alpha) const
{
    if (j < 1 || lam.size() != std::size_t(j) || lam_bar.size() != std::size_t(j - 1) ||
        nu_bar.size() != std::size_t(j - 1))
        return false;
    if (!interlaces_h(lam_bar, lam))
        return false;
    return alpha ? interlaces_h(lam_bar, nu_bar) : interlaces_v(lam_bar, nu_bar);
}

std::vector<Signature> candidate_nus(DynKind kind, const Signature& lam, long cap)
{
    std::vector<Signature> out;
    if (!is_alpha(kind)) {
        for_each_vstrip_above(lam, [&](const Signature& nu) { out.push_back(nu); });
        return out;
    }
    // Horizontal strips above lam with parts <= cap.
    const std::size_t n = lam.size();
    Signature nu = lam;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            out.push_back(nu);
            return;
        }
        long hi = i == 0 ? cap : std::min(cap, lam[i - 1]);
        for (long v = lam[i]; v <= hi; ++v) {
            nu[i] = v;
            rec(i + 1);
        }
        nu[i] = lam[i];
    };
    rec(0);
    return out;
}

} // namespace qrsk
