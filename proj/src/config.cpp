#include "fris/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fris {

std::string to_string(Encoding e) {
  return e == Encoding::General ? "general" : "mask";
}

std::string to_string(Mode m) {
  return m == Mode::Grid ? "grid" : "continuous";
}

Encoding encoding_from_string(const std::string& s) {
  if (s == "general") return Encoding::General;
  if (s == "mask") return Encoding::Mask;
  throw std::invalid_argument("unknown encoding: " + s);
}

Mode mode_from_string(const std::string& s) {
  if (s == "grid") return Mode::Grid;
  if (s == "continuous") return Mode::Continuous;
  throw std::invalid_argument("unknown mode: " + s);
}

double ScenarioConfig::cascaded_gain() const {
  const PathLossParams plp = path_loss_params();
  const double scale = gain_scale > 0.0 ? gain_scale : 1.0;
  return scale * path_loss(hop_source.distance, plp) *
         path_loss(hop_tag_fris.distance, plp) *
         path_loss(hop_fris_reader.distance, plp);
}

double ScenarioConfig::gamma_bar_linear() const {
  return std::pow(10.0, gamma_bar_db / 10.0);
}

double ScenarioConfig::effective_d_min(Mode mode) const {
  if (d_min >= 0.0) return d_min;
  return mode == Mode::Grid ? 0.0 : wavelength / 4.0;
}

std::pair<int, int> mask_dims_for(int m_o, int grid_mx, int grid_mz) {
  if (m_o < 1) throw std::invalid_argument("mask_dims_for: m_o must be >= 1");
  for (int mx = static_cast<int>(std::sqrt(static_cast<double>(m_o)));
       mx >= 1; --mx) {
    if (m_o % mx != 0) continue;
    const int mz = m_o / mx;
    if (mx <= grid_mx && mz <= grid_mz) return {mx, mz};
    if (mz <= grid_mx && mx <= grid_mz) return {mz, mx};
  }
  std::ostringstream os;
  os << "mask_dims_for: no m_x*m_z = " << m_o << " mask fits a " << grid_mx
     << "x" << grid_mz << " grid";
  throw std::invalid_argument(os.str());
}

void validate(const ScenarioConfig& sc) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("config validation: " + msg);
  };
  if (sc.wavelength <= 0.0) fail("wavelength must be > 0");
  if (sc.carrier_hz <= 0.0) fail("carrier_hz must be > 0");
  if (sc.aperture_wx <= 0.0 || sc.aperture_wz <= 0.0)
    fail("aperture widths must be > 0");
  if (sc.grid_mx < 1 || sc.grid_mz < 1) fail("grid dims must be >= 1");
  if (sc.m_o < 1 || sc.m_o > sc.total_elements())
    fail("m_o must satisfy 1 <= m_o <= M_x*M_z");
  if (sc.rician_k < 0.0) fail("rician_k must be >= 0");
  if (sc.alpha_exp < 0.0) fail("alpha_exp must be >= 0");
  if (sc.rho <= 0.0) fail("rho must be > 0");
  if (sc.bd_amplitude <= 0.0 || sc.bd_amplitude > 1.0)
    fail("bd_amplitude must be in (0, 1]");
  if (sc.bd_symbol != 1 && sc.bd_symbol != -1) fail("bd_symbol must be +-1");
  if (sc.n_draws < 1) fail("n_draws must be >= 1");
  if (sc.sigma_sq <= 0.0) fail("sigma_sq must be > 0");
  if (sc.gamma_bar_db > sc.p_max_db)
    fail("gamma_bar_db exceeds p_max_db");
  for (double g : sc.gamma_sweep_db)
    if (g > sc.p_max_db) fail("gamma_sweep_db entry exceeds p_max_db");
  for (const HopGeometry* h :
       {&sc.hop_source, &sc.hop_tag_fris, &sc.hop_fris_reader})
    if (h->distance <= 0.0) fail("hop distances must be > 0");
  if (sc.tau <= 0.0) fail("tau must be > 0");
  if (sc.gain_scale < 0.0) fail("gain_scale must be >= 0");
}

void validate(const PsoConfig& pc, const ScenarioConfig& sc) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("config validation: " + msg);
  };
  if (pc.n_particles < 1) fail("n_particles must be >= 1");
  if (pc.n_iters < 1) fail("n_iters must be >= 1");
  if (pc.inertia < 0.0 || pc.inertia > 1.0) fail("inertia must be in [0, 1]");
  if (pc.c_cog < 0.0 || pc.c_soc < 0.0) fail("c_cog/c_soc must be >= 0");
  if (pc.v_max_frac <= 0.0) fail("v_max_frac must be > 0");
  if (pc.encoding == Encoding::Mask)
    mask_dims_for(sc.m_o, sc.grid_mx, sc.grid_mz);  // throws when impossible
}

namespace {

using json = nlohmann::json;

HopGeometry parse_hop(const json& j, const std::string& where) {
  static const std::set<std::string> known = {"distance", "az_deg", "el_deg"};
  HopGeometry h;
  for (const auto& [key, val] : j.items()) {
    if (!known.count(key))
      throw std::invalid_argument("config parse: unknown key \"" + where +
                                  "." + key + "\"");
    if (key == "distance") h.distance = val.get<double>();
    if (key == "az_deg") h.az = val.get<double>() * M_PI / 180.0;
    if (key == "el_deg") h.el = val.get<double>() * M_PI / 180.0;
  }
  return h;
}

}  // namespace

std::pair<ScenarioConfig, PsoConfig> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("config missing: cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // Empty (or whitespace-only) file means the full default scenario.
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    text = "{}";

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config parse: ") + e.what());
  }
  if (!j.is_object())
    throw std::runtime_error("config parse: top level must be an object");

  ScenarioConfig sc;
  PsoConfig pc;
  bool wavelength_given = false;
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "wavelength") {
        sc.wavelength = val.get<double>();
        wavelength_given = true;
      } else if (key == "carrier_hz") {
        sc.carrier_hz = val.get<double>();
        if (!wavelength_given && !j.contains("wavelength"))
          sc.wavelength = 299792458.0 / sc.carrier_hz;
      } else if (key == "aperture_wx") {
        sc.aperture_wx = val.get<double>();
      } else if (key == "aperture_wz") {
        sc.aperture_wz = val.get<double>();
      } else if (key == "grid_mx") {
        sc.grid_mx = val.get<int>();
      } else if (key == "grid_mz") {
        sc.grid_mz = val.get<int>();
      } else if (key == "m_o") {
        sc.m_o = val.get<int>();
      } else if (key == "rician_k") {
        sc.rician_k = val.is_string() && val.get<std::string>() == "inf"
                          ? std::numeric_limits<double>::infinity()
                          : val.get<double>();
      } else if (key == "alpha_exp") {
        sc.alpha_exp = val.get<double>();
      } else if (key == "rho") {
        sc.rho = val.get<double>();
      } else if (key == "bd_amplitude") {
        sc.bd_amplitude = val.get<double>();
      } else if (key == "bd_symbol") {
        sc.bd_symbol = val.get<int>();
      } else if (key == "gamma_bar_db") {
        sc.gamma_bar_db = val.get<double>();
      } else if (key == "gamma_sweep_db") {
        sc.gamma_sweep_db = val.get<std::vector<double>>();
      } else if (key == "p_max_db") {
        sc.p_max_db = val.get<double>();
      } else if (key == "n_draws") {
        sc.n_draws = val.get<int>();
      } else if (key == "sigma_sq") {
        sc.sigma_sq = val.get<double>();
      } else if (key == "hop_source") {
        sc.hop_source = parse_hop(val, "hop_source");
      } else if (key == "hop_tag_fris") {
        sc.hop_tag_fris = parse_hop(val, "hop_tag_fris");
      } else if (key == "hop_fris_reader") {
        sc.hop_fris_reader = parse_hop(val, "hop_fris_reader");
      } else if (key == "d_min") {
        sc.d_min = val.get<double>();
      } else if (key == "gain_scale") {
        sc.gain_scale = val.get<double>();
      } else if (key == "tau") {
        sc.tau = val.get<double>();
      } else if (key == "n_particles") {
        pc.n_particles = val.get<int>();
      } else if (key == "n_iters") {
        pc.n_iters = val.get<int>();
      } else if (key == "inertia") {
        pc.inertia = val.get<double>();
      } else if (key == "c_cog") {
        pc.c_cog = val.get<double>();
      } else if (key == "c_soc") {
        pc.c_soc = val.get<double>();
      } else if (key == "encoding") {
        pc.encoding = encoding_from_string(val.get<std::string>());
      } else if (key == "mode") {
        pc.mode = mode_from_string(val.get<std::string>());
      } else if (key == "v_max_frac") {
        pc.v_max_frac = val.get<double>();
      } else {
        throw std::invalid_argument("config parse: unknown key \"" + key +
                                    "\"");
      }
    } catch (const json::exception& e) {
      throw std::runtime_error("config parse: key \"" + key +
                               "\": " + e.what());
    }
  }
  validate(sc);
  validate(pc, sc);
  return {sc, pc};
}

}  // namespace fris
