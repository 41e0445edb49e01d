#pragma once
#include <cmath>
#include <cstdint>
#include <string>

namespace skycov {

inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Reading of the blockage-formula denominator. The published formula prints
// "m+1" where m collides with the Nakagami shape; see README for the variants.
enum class BlockageDenominator { P, PPlus1, MPlus1 };
// Whether ray heights are measured relative to the SBS mounting height
// (default) or as absolute heights above ground including h_sbs.
enum class BlockageHeightBase { Relative, Absolute };

struct Numerics {
  double r_sim_window = 10000.0;  // out-of-cluster PPP truncation, m
  int kappa_max = 20;             // Poisson-sum truncation for the analytic path
  std::int64_t n_trials = 10000;
  double quad_tolerance = 1e-8;   // relative accuracy demanded of the PGFL integrals
  double v_max = 50000.0;         // quadrature truncation radius, m
  int config_enum_cap = 12;       // full 2^kappa LoS enumeration up to this kappa
  std::uint64_t rng_seed = 20200521;
  int n_geom = 2000;              // geometry draws for the analytic outer expectation

  friend bool operator==(const Numerics&, const Numerics&) = default;
};

// Table I defaults. Lengths in meters, intensities per m^2, gains linear.
struct SystemParams {
  double alpha_los = 2.09;
  double alpha_nlos = 3.75;
  double a_los = db_to_linear(-41.1);
  double a_nlos = db_to_linear(-32.9);
  double g_main = db_to_linear(10.0);
  double g_side = db_to_linear(-3.01);
  int m_nakagami = 3;
  double eta_spread = 2.0;
  double h_sbs = 30.0;
  double h_ue = 100.0;
  double bldg_area_fraction = 0.3;
  double bldg_density = 200e-6;   // converted from per-km^2 at the config boundary
  double bldg_height_scale = 15.0;
  double r_cluster = 200.0;
  double lambda_b = 20e-6;        // converted from per-km^2 at the config boundary
  double sir_threshold = 1.0;     // 0 dB
  double theta_tilt = 8.0;        // degrees
  double theta_beam = 30.0;       // degrees
  double c_f = 1.0;
  double p_tx = 1.0;              // cancels in every SIR; kept for completeness
  double h_ground = 1.5;          // ground-user altitude (design decision)
  int m_ground = 1;               // Rayleigh fading for the ground user
  BlockageDenominator blockage_denominator = BlockageDenominator::P;
  BlockageHeightBase blockage_height_base = BlockageHeightBase::Relative;
  Numerics numerics;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Throws std::invalid_argument listing every violated invariant.
void validate(const SystemParams& p);

// Flat key/value text. Unknown key, bad number or violated invariant throws
// with a line diagnostic. Absent keys keep Table I defaults.
SystemParams parse_config_text(const std::string& text);
SystemParams load_config(const std::string& path);
std::string dump(const SystemParams& p);

}  // namespace skycov
