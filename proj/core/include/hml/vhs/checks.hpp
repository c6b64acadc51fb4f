#pragma once

#include "hml/vhs/engine.hpp"
#include "hml/vhs/wirtinger.hpp"

namespace hml::vhs {

/// Frame-level residuals of one variation at one point (all relative, ≥ 0).
struct FrameChecks {
  /// Q(H^p, H^{p'}) for p + p' ≠ k.
  double riemann_hodge_first = 0.0;
  /// Smallest eigenvalue of g_p over its norm, minimized over p; > 0 is the second relation.
  double positivity_margin = 0.0;
  /// Q(F^p, F^{p'}) for p + p' > k on the holomorphic blocks; zero iff Q is flat for the frame.
  double q_flatness = 0.0;
  double transversality = 0.0;
  double commutation = 0.0;
  /// Pairing of ∂̄_β D_α Ω_p against blocks other than the dual of H^p (finite differences).
  double dbar_lemma = 0.0;
};

FrameChecks frame_checks(const Variation& v, const Point& t, const FdSettings& fd, double transversality_threshold = 1e-8);

}  // namespace hml::vhs
