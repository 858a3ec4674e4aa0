#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entwit/operator.hpp"
#include "entwit/rng.hpp"
#include "entwit/verdict.hpp"

namespace entwit {

inline constexpr double kHbarSI = 1.054571817e-34;  // J s

struct PhysicalConfig {
    double hbar = 1.0;

    void validate() const;
};

// Degenerate SPDC source with a Gaussian pump of waist w in a crystal of length L.
// All lengths share one unit. A missing Lc means a fully coherent pump.
struct SpdcConfig {
    double w = 0.0;
    double L = 0.0;
    double lambda = 0.0;
    double alpha = 0.455;
    std::optional<double> Lc;

    void validate() const;
};

// Bipartite Gaussian state in one transverse direction, described by its widths
// along the rotated coordinates u_pm = (u_a +- u_b)/sqrt(2). Variances are stored
// so that closed-form quantities can be compared without a sqrt round trip.
class GaussianJointState {
public:
    static GaussianJointState from_widths(double dxp, double dxm, double dpp, double dpm, double hbar);
    static GaussianJointState from_variances(double var_xp, double var_xm, double var_pp,
                                             double var_pm, double hbar);

    double var_xp() const noexcept { return var_xp_; }
    double var_xm() const noexcept { return var_xm_; }
    double var_pp() const noexcept { return var_pp_; }
    double var_pm() const noexcept { return var_pm_; }
    double dxp() const;
    double dxm() const;
    double dpp() const;
    double dpm() const;
    double hbar() const noexcept { return hbar_; }

    // Single-subsystem widths implied by the joint widths.
    double subsystem_dx() const;
    double subsystem_dp() const;

private:
    GaussianJointState(double var_xp, double var_xm, double var_pp, double var_pm, double hbar);

    double var_xp_, var_xm_, var_pp_, var_pm_, hbar_;
};

// Coherent pump: var_pp = hbar^2/(8 w^2), var_pm = hbar^2 pi/(alpha L lambda) and the
// Fourier-limited position widths dx_pm = hbar/(2 dp_pm). Requires cfg.Lc unset or infinite.
GaussianJointState spdc_state(const SpdcConfig& cfg, const PhysicalConfig& phys);

// 1 + (2w/Lc)^2
double schell_factor(double w, double Lc);

// Gaussian-Schell pump: var_pp grows by schell_factor, every other width is kept from the
// coherent state. Requires cfg.Lc > 0.
GaussianJointState schell_broadening(const SpdcConfig& cfg, const PhysicalConfig& phys);

// Dispatches on whether cfg.Lc is set.
GaussianJointState spdc_joint_state(const SpdcConfig& cfg, const PhysicalConfig& phys);

// Normalized joint densities.
double joint_pdf_momentum(const GaussianJointState& s, double pa, double pb);
double joint_pdf_position(const GaussianJointState& s, double xa, double xb);

struct EprReidResult {
    double dxm = 0.0;
    double dpp = 0.0;
    double product = 0.0;
    double bound = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double margin = 0.0;
};

// Verified iff dxm * dpp < (hbar/2)(1 - margin).
EprReidResult epr_reid_from_widths(double dxm, double dpp, double hbar, double margin = 0.0);
EprReidResult epr_reid(const GaussianJointState& state, double margin = 0.0);

// One subsystem of one product component: Gaussian position and momentum marginals.
struct SubsystemGaussian {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double dx = 1.0;
    double dp = 0.5;
};

struct ProductComponent {
    double weight = 1.0;
    SubsystemGaussian a;
    SubsystemGaussian b;
};

struct JointWidths {
    double dxm = 0.0;
    double dpp = 0.0;
    double product() const { return dxm * dpp; }
};

struct MixtureEstimate {
    double dxm = 0.0;
    double dpp = 0.0;
    double product = 0.0;
    double std_error = 0.0;  // of product, delta method from sample fourth moments
    std::int64_t n = 0;
};

// Classical mixture of product Gaussians sum_i w_i rho_a^(i) (x) rho_b^(i).
class ProductMixture {
public:
    const std::vector<ProductComponent>& components() const noexcept { return components_; }
    double hbar() const noexcept { return hbar_; }

    // Exact ensemble widths by variance composition over components.
    JointWidths exact_widths() const;

    // Draws component i with probability w_i, then independent per-subsystem Gaussians.
    MixtureEstimate sample(std::int64_t n, CounterRng rng) const;

private:
    friend ProductMixture mix_of_products(std::vector<ProductComponent>, double);
    ProductMixture(std::vector<ProductComponent> c, double hbar);

    std::vector<ProductComponent> components_;
    std::vector<double> cdf_;
    double hbar_;
};

// Rejects components violating dx * dp >= hbar/2 on either subsystem.
ProductMixture mix_of_products(std::vector<ProductComponent> components, double hbar = 1.0);

// Random admissible mixture with 1..max_components components. A share of components
// sits exactly at minimum uncertainty with coincident means so the bound is probed tightly.
std::vector<ProductComponent> random_admissible_components(CounterRng& rng, double hbar,
                                                           int max_components = 4);

}  // namespace entwit
