#include "entwit/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace entwit {

namespace {

constexpr double kHeisenbergRelTol = 1e-12;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_positive(double v, const char* name) {
    if (!positive_finite(v)) {
        throw ValidationError(std::string(name) + " must be positive and finite, got " +
                              std::to_string(v));
    }
}

struct Moments {
    double mean = 0.0;
    double var = 0.0;  // unbiased
    double m4 = 0.0;   // central fourth moment
};

Moments moments(const std::vector<double>& v) {
    Moments m;
    const double n = static_cast<double>(v.size());
    for (double x : v) m.mean += x;
    m.mean /= n;
    double s2 = 0.0, s4 = 0.0;
    for (double x : v) {
        const double d = (x - m.mean) * (x - m.mean);
        s2 += d;
        s4 += d * d;
    }
    m.var = s2 / (n - 1.0);
    m.m4 = s4 / n;
    return m;
}

// Standard error of the sample standard deviation by the delta method.
double sd_standard_error(const Moments& m, double n) {
    const double s = std::sqrt(m.var);
    const double var_of_var = std::max(m.m4 - m.var * m.var, 0.0) / n;
    return std::sqrt(var_of_var) / (2.0 * s);
}

}  // namespace

void PhysicalConfig::validate() const { require_positive(hbar, "hbar"); }

void SpdcConfig::validate() const {
    require_positive(w, "pump waist w");
    require_positive(L, "crystal length L");
    require_positive(lambda, "pump wavelength lambda");
    require_positive(alpha, "phase-matching constant alpha");
    if (Lc && !(*Lc > 0.0)) throw ValidationError("coherence length Lc must be positive");
}

GaussianJointState::GaussianJointState(double var_xp, double var_xm, double var_pp, double var_pm,
                                       double hbar)
    : var_xp_(var_xp), var_xm_(var_xm), var_pp_(var_pp), var_pm_(var_pm), hbar_(hbar) {
    require_positive(hbar, "hbar");
    require_positive(var_xp, "var x+");
    require_positive(var_xm, "var x-");
    require_positive(var_pp, "var p+");
    require_positive(var_pm, "var p-");
    // Each subsystem alone must obey dx_l dp_l >= hbar/2.
    const double vx = 0.5 * (var_xp + var_xm);
    const double vp = 0.5 * (var_pp + var_pm);
    const double floor = 0.25 * hbar * hbar * (1.0 - 2.0 * kHeisenbergRelTol);
    if (vx * vp < floor) {
        throw ValidationError("Gaussian state violates the single-subsystem uncertainty relation");
    }
}

GaussianJointState GaussianJointState::from_widths(double dxp, double dxm, double dpp, double dpm,
                                                   double hbar) {
    require_positive(dxp, "dx+");
    require_positive(dxm, "dx-");
    require_positive(dpp, "dp+");
    require_positive(dpm, "dp-");
    return GaussianJointState(dxp * dxp, dxm * dxm, dpp * dpp, dpm * dpm, hbar);
}

GaussianJointState GaussianJointState::from_variances(double var_xp, double var_xm, double var_pp,
                                                      double var_pm, double hbar) {
    return GaussianJointState(var_xp, var_xm, var_pp, var_pm, hbar);
}

double GaussianJointState::dxp() const { return std::sqrt(var_xp_); }
double GaussianJointState::dxm() const { return std::sqrt(var_xm_); }
double GaussianJointState::dpp() const { return std::sqrt(var_pp_); }
double GaussianJointState::dpm() const { return std::sqrt(var_pm_); }
double GaussianJointState::subsystem_dx() const { return std::sqrt(0.5 * (var_xp_ + var_xm_)); }
double GaussianJointState::subsystem_dp() const { return std::sqrt(0.5 * (var_pp_ + var_pm_)); }

GaussianJointState spdc_state(const SpdcConfig& cfg, const PhysicalConfig& phys) {
    cfg.validate();
    phys.validate();
    if (cfg.Lc && std::isfinite(*cfg.Lc)) {
        throw ValidationError("spdc_state: finite Lc requires schell_broadening");
    }
    const double h2 = phys.hbar * phys.hbar;
    const double var_pp = h2 / (8.0 * cfg.w * cfg.w);
    const double var_pm = h2 * std::numbers::pi / (cfg.alpha * cfg.L * cfg.lambda);
    // dx = hbar / (2 dp)  <=>  var_x = hbar^2 / (4 var_p)
    const double var_xp = h2 / (4.0 * var_pp);
    const double var_xm = h2 / (4.0 * var_pm);
    return GaussianJointState::from_variances(var_xp, var_xm, var_pp, var_pm, phys.hbar);
}

double schell_factor(double w, double Lc) { return 1.0 + (2.0 * w / Lc) * (2.0 * w / Lc); }

GaussianJointState schell_broadening(const SpdcConfig& cfg, const PhysicalConfig& phys) {
    if (!cfg.Lc) throw ValidationError("schell_broadening: coherence length Lc is required");
    cfg.validate();
    SpdcConfig coherent = cfg;
    coherent.Lc.reset();
    const GaussianJointState base = spdc_state(coherent, phys);
    return GaussianJointState::from_variances(base.var_xp(), base.var_xm(),
                                              base.var_pp() * schell_factor(cfg.w, *cfg.Lc),
                                              base.var_pm(), phys.hbar);
}

GaussianJointState spdc_joint_state(const SpdcConfig& cfg, const PhysicalConfig& phys) {
    return cfg.Lc ? schell_broadening(cfg, phys) : spdc_state(cfg, phys);
}

namespace {

double rotated_gaussian_pdf(double ua, double ub, double var_plus, double var_minus) {
    const double up = (ua + ub) / std::numbers::sqrt2;
    const double um = (ua - ub) / std::numbers::sqrt2;
    const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(var_plus * var_minus));
    return norm * std::exp(-0.5 * (up * up / var_plus + um * um / var_minus));
}

}  // namespace

double joint_pdf_momentum(const GaussianJointState& s, double pa, double pb) {
    return rotated_gaussian_pdf(pa, pb, s.var_pp(), s.var_pm());
}

double joint_pdf_position(const GaussianJointState& s, double xa, double xb) {
    return rotated_gaussian_pdf(xa, xb, s.var_xp(), s.var_xm());
}

EprReidResult epr_reid_from_widths(double dxm, double dpp, double hbar, double margin) {
    if (!(dxm >= 0.0) || !(dpp >= 0.0)) throw ValidationError("epr_reid: widths must be >= 0");
    require_positive(hbar, "hbar");
    if (!(margin >= 0.0)) throw ValidationError("epr_reid: margin must be >= 0");
    EprReidResult r;
    r.dxm = dxm;
    r.dpp = dpp;
    r.product = dxm * dpp;
    r.bound = hbar / 2.0;
    r.margin = margin;
    r.verdict = r.product < r.bound * (1.0 - margin) ? Verdict::EntanglementVerified
                                                     : Verdict::Inconclusive;
    return r;
}

EprReidResult epr_reid(const GaussianJointState& state, double margin) {
    return epr_reid_from_widths(state.dxm(), state.dpp(), state.hbar(), margin);
}

ProductMixture::ProductMixture(std::vector<ProductComponent> c, double hbar)
    : components_(std::move(c)), hbar_(hbar) {
    double acc = 0.0;
    for (const auto& comp : components_) {
        acc += comp.weight;
        cdf_.push_back(acc);
    }
}

ProductMixture mix_of_products(std::vector<ProductComponent> components, double hbar) {
    require_positive(hbar, "hbar");
    if (components.empty()) throw ValidationError("mix_of_products: no components");
    double total = 0.0;
    const double floor = 0.5 * hbar * (1.0 - kHeisenbergRelTol);
    for (const auto& c : components) {
        if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
            throw ValidationError("mix_of_products: weight outside [0, 1]");
        }
        for (const SubsystemGaussian* g : {&c.a, &c.b}) {
            require_positive(g->dx, "component dx");
            require_positive(g->dp, "component dp");
            if (!std::isfinite(g->mean_x) || !std::isfinite(g->mean_p)) {
                throw ValidationError("mix_of_products: component means must be finite");
            }
            if (g->dx * g->dp < floor) {
                throw ValidationError("mix_of_products: component violates dx dp >= hbar/2");
            }
        }
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("mix_of_products: weights sum to " + std::to_string(total));
    }
    return ProductMixture(std::move(components), hbar);
}

JointWidths ProductMixture::exact_widths() const {
    double local_x = 0.0, local_p = 0.0;
    double mx = 0.0, mx2 = 0.0, mp = 0.0, mp2 = 0.0;
    for (const auto& c : components_) {
        const double w = c.weight;
        local_x += w * 0.5 * (c.a.dx * c.a.dx + c.b.dx * c.b.dx);
        local_p += w * 0.5 * (c.a.dp * c.a.dp + c.b.dp * c.b.dp);
        const double xm = (c.a.mean_x - c.b.mean_x) / std::numbers::sqrt2;
        const double pp = (c.a.mean_p + c.b.mean_p) / std::numbers::sqrt2;
        mx += w * xm;
        mx2 += w * xm * xm;
        mp += w * pp;
        mp2 += w * pp * pp;
    }
    // Mean spread terms are nonnegative analytically; clamp rounding.
    const double var_xm = local_x + std::max(mx2 - mx * mx, 0.0);
    const double var_pp = local_p + std::max(mp2 - mp * mp, 0.0);
    return {std::sqrt(var_xm), std::sqrt(var_pp)};
}

MixtureEstimate ProductMixture::sample(std::int64_t n, CounterRng rng) const {
    if (n < 2) throw ValidationError("ProductMixture::sample: n must be >= 2");
    std::vector<double> xm(static_cast<std::size_t>(n));
    std::vector<double> pp(static_cast<std::size_t>(n));
    const double total = cdf_.back();
    for (std::int64_t k = 0; k < n; ++k) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const std::size_t idx =
            std::min(static_cast<std::size_t>(it - cdf_.begin()), components_.size() - 1);
        const ProductComponent& c = components_[idx];
        const double xa = c.a.mean_x + c.a.dx * rng.normal();
        const double xb = c.b.mean_x + c.b.dx * rng.normal();
        const double pa = c.a.mean_p + c.a.dp * rng.normal();
        const double pb = c.b.mean_p + c.b.dp * rng.normal();
        xm[k] = (xa - xb) / std::numbers::sqrt2;
        pp[k] = (pa + pb) / std::numbers::sqrt2;
    }
    const Moments mx = moments(xm);
    const Moments mp = moments(pp);
    MixtureEstimate e;
    e.n = n;
    e.dxm = std::sqrt(mx.var);
    e.dpp = std::sqrt(mp.var);
    e.product = e.dxm * e.dpp;
    const double nn = static_cast<double>(n);
    const double rx = sd_standard_error(mx, nn) / e.dxm;
    const double rp = sd_standard_error(mp, nn) / e.dpp;
    e.std_error = e.product * std::sqrt(rx * rx + rp * rp);
    return e;
}

std::vector<ProductComponent> random_admissible_components(CounterRng& rng, double hbar,
                                                           int max_components) {
    if (max_components < 1) throw ValidationError("max_components must be >= 1");
    const int k = 1 + static_cast<int>(rng.uniform() * max_components);
    const double scale = std::sqrt(hbar);
    std::vector<ProductComponent> out(static_cast<std::size_t>(k));
    double total = 0.0;
    for (auto& c : out) {
        c.weight = rng.uniform_open_low();
        total += c.weight;
        if (rng.uniform() < 0.3) {
            // minimum uncertainty, matched widths, no mean offset in x- or p+
            const double dx = scale * std::exp(2.0 * rng.uniform() - 1.0);
            const double mx = scale * rng.normal();
            const double mp = scale * rng.normal();
            c.a = {mx, mp, dx, hbar / (2.0 * dx)};
            c.b = {mx, -mp, dx, hbar / (2.0 * dx)};
        } else {
            for (SubsystemGaussian* g : {&c.a, &c.b}) {
                g->dx = scale * std::exp(2.0 * rng.uniform() - 1.0);
                g->dp = hbar / (2.0 * g->dx) * (1.0 + 0.5 * rng.uniform());
                g->mean_x = scale * rng.normal();
                g->mean_p = scale * rng.normal();
            }
        }
    }
    for (auto& c : out) c.weight /= total;
    return out;
}

}  // namespace entwit
