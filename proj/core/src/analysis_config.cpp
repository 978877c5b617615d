#include "itsg/analysis_config.hpp"

#include <cmath>
#include <stdexcept>

namespace itsg {

void AnalysisConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(window_s > 0.0, "window_s must be positive");
  require(bin_width > 0.0, "bin_width must be positive");
  require(mi_on > 0.0, "mi_on must be positive");
  require(mi_off > 0.0, "mi_off must be positive");
  require(mi_off <= mi_on, "mi_off must not exceed mi_on");
  require(ho_dist > 0.0, "ho_dist must be positive");
  require(oo_dist > 0.0, "oo_dist must be positive");
  require(trend_n >= 2, "trend_n must be at least 2");
  require(entropy_scale > 0.0, "entropy_scale must be positive");
  require(pos_tol > 0.0, "pos_tol must be positive");
  require(tsa_tol > 0.0, "tsa_tol must be positive");
}

int window_samples(const AnalysisConfig& cfg, double rate) {
  if (rate <= 0.0) throw std::invalid_argument("window_samples: rate must be positive");
  auto n = static_cast<int>(std::llround(cfg.window_s * rate));
  if (n < 1) n = 1;
  if (n % 2 == 0) ++n;  // symmetric about the centre frame
  return n;
}

}  // namespace itsg
