#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

double gamma(const Inputs& in) {
  const double n_tilde =
      in.log_norm ? std::log(in.n_q) / std::log(static_cast<double>(in.n_q_norm))
                  : in.n_q / static_cast<double>(in.n_q_norm);
  const double j_qb = std::pow(2.0, n_tilde) - 1.0;
  const double j_qf = in.quality_factor;
  const double j_f = 2.0 - std::pow(in.fidelity, in.n_q);
  const double n_q_max = static_cast<double>(in.n_q_lim) * in.n_cores;
  const double h = in.n_q - n_q_max >= 0.0 ? 1.0 : 0.0;
  const double j_i = 1.0 + (in.eps_i * in.n_q / in.n_cores) *
                               std::pow(h * in.n_q / n_q_max, 3.0);
  const double n_used = std::max(
      std::min(std::ceil(in.n_q / static_cast<double>(in.n_q_lim)),
               static_cast<double>(in.n_cores)),
      1.0);
  const double j_c = 2.0 - std::pow(1.0 - in.eps_c, n_used);
  return ((in.w_qb * j_qb) * (in.w_qf * j_qf)) /
         (((in.w_f * j_f) * (in.w_i * j_i)) * (in.w_c * j_c));
}

double evolved_fidelity(double fidelity, double delta) {
  return 1.0 - (1.0 - fidelity) / (1.0 + delta);
}

double evolved_quality_factor(double quality_factor, double delta) {
  return quality_factor * (1.0 + delta);
}

}  // namespace oracle
