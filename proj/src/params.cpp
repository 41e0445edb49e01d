#include "skycov/params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace skycov {

void validate(const SystemParams& p) {
  std::vector<std::string> bad;
  auto pos = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) bad.push_back(std::string(name) + " must be > 0");
  };
  if (!(p.alpha_los < p.alpha_nlos)) bad.push_back("alpha_los must be < alpha_nlos");
  pos(p.alpha_los, "alpha_los");
  pos(p.a_los, "a_los");
  pos(p.a_nlos, "a_nlos");
  pos(p.g_main, "g_main");
  pos(p.g_side, "g_side");
  if (p.m_nakagami < 1) bad.push_back("m_nakagami must be an integer >= 1");
  if (p.m_ground < 1) bad.push_back("m_ground must be an integer >= 1");
  pos(p.eta_spread, "eta_spread");
  pos(p.h_sbs, "h_sbs");
  pos(p.h_ue, "h_ue");
  pos(p.bldg_area_fraction, "bldg_area_fraction");
  pos(p.bldg_density, "bldg_density");
  pos(p.bldg_height_scale, "bldg_height_scale");
  pos(p.r_cluster, "r_cluster");
  pos(p.lambda_b, "lambda_b");
  pos(p.sir_threshold, "sir_threshold");
  pos(p.theta_beam, "theta_beam");
  pos(p.p_tx, "p_tx");
  pos(p.h_ground, "h_ground");
  if (!(p.c_f >= 0.0 && p.c_f <= 1.0)) bad.push_back("c_f must lie in [0,1]");
  if (!(p.numerics.r_sim_window > p.r_cluster))
    bad.push_back("r_sim_window must exceed r_cluster");
  const double mu = p.c_f * p.lambda_b * M_PI * p.r_cluster * p.r_cluster;
  if (p.numerics.kappa_max < std::ceil(mu) + 8.0 * std::sqrt(mu))
    bad.push_back("kappa_max too small for the cache-count tail (need >= ceil(mu)+8*sqrt(mu))");
  if (p.numerics.n_trials < 1) bad.push_back("n_trials must be >= 1");
  pos(p.numerics.quad_tolerance, "quad_tolerance");
  if (!(p.numerics.v_max > p.r_cluster)) bad.push_back("v_max must exceed r_cluster");
  if (p.numerics.config_enum_cap < 1) bad.push_back("config_enum_cap must be >= 1");
  if (p.numerics.n_geom < 1) bad.push_back("n_geom must be >= 1");
  if (!bad.empty()) {
    std::string msg = "invalid parameters:";
    for (auto& b : bad) msg += "\n  - " + b;
    throw std::invalid_argument(msg);
  }
}

namespace {

const double kKm2 = 1e-6;  // per-km^2 -> per-m^2

double parse_number(const std::string& s, int line) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config line " + std::to_string(line) +
                                ": cannot parse number '" + s + "'");
  }
}

}  // namespace

SystemParams parse_config_text(const std::string& text) {
  SystemParams p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    // accept "key = value" or "key value"
    std::string key, val;
    {
      std::istringstream ls(line);
      ls >> key;
      if (key.empty()) continue;
      std::getline(ls, val);
      if (auto eq = val.find('='); eq != std::string::npos) val.erase(0, eq + 1);
      size_t b = val.find_first_not_of(" \t\r");
      val = (b == std::string::npos) ? "" : val.substr(b);
      size_t e = val.find_last_not_of(" \t\r");
      if (e != std::string::npos) val.erase(e + 1);
    }
    if (val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key '" + key + "' has no value");
    auto num = [&] { return parse_number(val, lineno); };
    if (key == "alpha_los") p.alpha_los = num();
    else if (key == "alpha_nlos") p.alpha_nlos = num();
    else if (key == "a_los") p.a_los = num();
    else if (key == "a_los_db") p.a_los = db_to_linear(num());
    else if (key == "a_nlos") p.a_nlos = num();
    else if (key == "a_nlos_db") p.a_nlos = db_to_linear(num());
    else if (key == "g_main") p.g_main = num();
    else if (key == "g_main_db") p.g_main = db_to_linear(num());
    else if (key == "g_side") p.g_side = num();
    else if (key == "g_side_db") p.g_side = db_to_linear(num());
    else if (key == "m_nakagami") p.m_nakagami = static_cast<int>(num());
    else if (key == "m_ground") p.m_ground = static_cast<int>(num());
    else if (key == "eta_spread") p.eta_spread = num();
    else if (key == "h_sbs") p.h_sbs = num();
    else if (key == "h_ue") p.h_ue = num();
    else if (key == "h_ground") p.h_ground = num();
    else if (key == "bldg_area_fraction") p.bldg_area_fraction = num();
    else if (key == "bldg_density") p.bldg_density = num() * kKm2;
    else if (key == "bldg_height_scale") p.bldg_height_scale = num();
    else if (key == "r_cluster") p.r_cluster = num();
    else if (key == "lambda_b") p.lambda_b = num() * kKm2;
    else if (key == "sir_threshold") p.sir_threshold = num();
    else if (key == "sir_threshold_db") p.sir_threshold = db_to_linear(num());
    else if (key == "theta_tilt") p.theta_tilt = num();
    else if (key == "theta_beam") p.theta_beam = num();
    else if (key == "c_f") p.c_f = num();
    else if (key == "p_tx") p.p_tx = num();
    else if (key == "blockage_denominator") {
      if (val == "p") p.blockage_denominator = BlockageDenominator::P;
      else if (val == "p_plus_1") p.blockage_denominator = BlockageDenominator::PPlus1;
      else if (val == "m_plus_1") p.blockage_denominator = BlockageDenominator::MPlus1;
      else throw std::invalid_argument("config line " + std::to_string(lineno) +
                                       ": blockage_denominator must be p, p_plus_1 or m_plus_1");
    } else if (key == "blockage_height_base") {
      if (val == "relative") p.blockage_height_base = BlockageHeightBase::Relative;
      else if (val == "absolute") p.blockage_height_base = BlockageHeightBase::Absolute;
      else throw std::invalid_argument("config line " + std::to_string(lineno) +
                                       ": blockage_height_base must be relative or absolute");
    }
    else if (key == "r_sim_window") p.numerics.r_sim_window = num();
    else if (key == "kappa_max") p.numerics.kappa_max = static_cast<int>(num());
    else if (key == "n_trials") p.numerics.n_trials = static_cast<std::int64_t>(num());
    else if (key == "quad_tolerance") p.numerics.quad_tolerance = num();
    else if (key == "v_max") p.numerics.v_max = num();
    else if (key == "config_enum_cap") p.numerics.config_enum_cap = static_cast<int>(num());
    else if (key == "rng_seed") p.numerics.rng_seed = static_cast<std::uint64_t>(num());
    else if (key == "n_geom") p.numerics.n_geom = static_cast<int>(num());
    else
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
  }
  validate(p);
  return p;
}

SystemParams load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string dump(const SystemParams& p) {
  std::ostringstream o;
  o.precision(17);
  o << "alpha_los " << p.alpha_los << "\n"
    << "alpha_nlos " << p.alpha_nlos << "\n"
    << "a_los " << p.a_los << "\n"
    << "a_nlos " << p.a_nlos << "\n"
    << "g_main " << p.g_main << "\n"
    << "g_side " << p.g_side << "\n"
    << "m_nakagami " << p.m_nakagami << "\n"
    << "m_ground " << p.m_ground << "\n"
    << "eta_spread " << p.eta_spread << "\n"
    << "h_sbs " << p.h_sbs << "\n"
    << "h_ue " << p.h_ue << "\n"
    << "h_ground " << p.h_ground << "\n"
    << "bldg_area_fraction " << p.bldg_area_fraction << "\n"
    << "bldg_density " << p.bldg_density / kKm2 << "\n"
    << "bldg_height_scale " << p.bldg_height_scale << "\n"
    << "r_cluster " << p.r_cluster << "\n"
    << "lambda_b " << p.lambda_b / kKm2 << "\n"
    << "sir_threshold " << p.sir_threshold << "\n"
    << "theta_tilt " << p.theta_tilt << "\n"
    << "theta_beam " << p.theta_beam << "\n"
    << "c_f " << p.c_f << "\n"
    << "p_tx " << p.p_tx << "\n";
  o << "blockage_denominator "
    << (p.blockage_denominator == BlockageDenominator::P ? "p"
        : p.blockage_denominator == BlockageDenominator::PPlus1 ? "p_plus_1" : "m_plus_1")
    << "\n";
  o << "blockage_height_base "
    << (p.blockage_height_base == BlockageHeightBase::Relative ? "relative" : "absolute")
    << "\n";
  o << "r_sim_window " << p.numerics.r_sim_window << "\n"
    << "kappa_max " << p.numerics.kappa_max << "\n"
    << "n_trials " << p.numerics.n_trials << "\n"
    << "quad_tolerance " << p.numerics.quad_tolerance << "\n"
    << "v_max " << p.numerics.v_max << "\n"
    << "config_enum_cap " << p.numerics.config_enum_cap << "\n"
    << "rng_seed " << p.numerics.rng_seed << "\n"
    << "n_geom " << p.numerics.n_geom << "\n";
  return o.str();
}

}  // namespace skycov
