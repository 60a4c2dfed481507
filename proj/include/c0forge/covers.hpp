#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "c0forge/embedding.hpp"
#include "c0forge/metric.hpp"

namespace c0forge {

/// Which separation condition a cover certifies: Pi measures far pairs
/// against r1 + r2, Pi+ against the common radius r of equal-radius balls.
enum class CoverMode { pi, pi_plus };

enum class ProviderKind { generic, net, lp, generic_plus, net_plus, lp_plus, lp_positive };

std::string_view to_string(ProviderKind kind);
std::optional<ProviderKind> parse_provider_kind(std::string_view text);
CoverMode mode_of(ProviderKind kind);
bool is_lp_kind(ProviderKind kind);

/// Fixed constant of a kind (2, 3, 2^{1/p}, (2^p+1)^{1/p}, 3^{1/p}); empty
/// for the net kinds, which accept any lambda > 1.
std::optional<double> provider_constant(ProviderKind kind, double p);

struct ProviderSpec {
  ProviderKind kind = ProviderKind::generic;
  double lambda = 2.0;
  /// Fraction of the admissible net radius actually used; net kinds only.
  double net_fraction = 0.5;
  /// Point coordinates; lp kinds only. The space handed to the provider must
  /// be lp_space(*cloud).
  std::shared_ptr<const LpPointCloud> cloud;

  double p() const { return cloud ? cloud->p : 1.0; }
};

/// Throws LambdaOutOfRange / BadParams / NotPositiveCone if inadmissible.
void validate_provider(const ProviderSpec& spec);
ProviderSpec make_provider(ProviderKind kind, double lambda,
                           std::shared_ptr<const LpPointCloud> cloud = nullptr,
                           double net_fraction = 0.5);
/// The kind's constant for an lp or fixed kind.
ProviderSpec make_provider_auto(ProviderKind kind,
                                std::shared_ptr<const LpPointCloud> cloud = nullptr);

/// The nu a base provider guarantees at this mu.
double provider_nu(const ProviderSpec& spec, double mu);

struct CoverPair {
  PointSet U;
  PointSet V;
};

enum class CoverVariant { plain, graded };

/// Plain: lambda * delta(U_j, V_j) >= nu * scale for every pair.
/// Graded: each far (x,y) sits in a pair with lambda mu delta >= nu d(x,y).
/// Far means d(x,y) > threshold = mu * scale.
struct CoverFamily {
  std::vector<CoverPair> pairs;
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  CoverVariant variant = CoverVariant::plain;
  CoverMode mode = CoverMode::pi;
  double scale = 0.0;
  double threshold = 0.0;
};

CoverFamily generic_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                          double mu);
CoverFamily net_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2, double mu,
                      double lambda, double net_fraction = 0.5);
CoverFamily lp_cover(const LpPointCloud& cloud, const FiniteMetricSpace& space, const Ball& b1,
                     const Ball& b2, double mu);
CoverFamily generic_cover_plus(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                               double mu);
CoverFamily net_cover_plus(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                           double mu, double lambda, double net_fraction = 0.5);
CoverFamily lp_cover_plus(const LpPointCloud& cloud, const FiniteMetricSpace& space,
                          const Ball& b1, const Ball& b2, double mu);
CoverFamily lp_positive_cover(const LpPointCloud& cloud, const FiniteMetricSpace& space,
                              const Ball& b1, const Ball& b2, double mu);

/// Dispatches on spec.kind.
CoverFamily base_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2, double mu,
                       const ProviderSpec& spec);

/// Restricts a graded cover to far pairs in left x right (subsets of the two
/// balls); returned pairs are intersected with left and right.
struct CoverFocus {
  PointSet left;
  PointSet right;
};

/// Scale-stratified cover: the base provider runs on balls inflated by
/// (1+eps)^k, eps = nu'/nu - 1, for each k whose band
/// ((1+eps)^k mu s, (1+eps)^{k+1} mu s] holds a far pair. Pi+ providers
/// give the Pi+ analogue (equal radii). Throws EpsilonSearchFailed once eps
/// drops below 1e-12, i.e. when mu is within rounding of lambda.
CoverFamily graded_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2, double mu,
                         const ProviderSpec& base, const CoverFocus* focus = nullptr);

/// Calibration function for Pi+ condition (ii):
/// |phi(x) - phi(y)| <= d(x,y) <= theta_plus * max(phi(x), phi(y)).
struct PhiFunction {
  std::vector<double> values;
  double theta_plus = 2.0;
};

/// phi(x) = max over the net of d(x, z); the whole space when `net` is empty.
PhiFunction phi_net(const FiniteMetricSpace& space, double lambda, const PointSet& net = {});
/// phi(x) = d(x, anchor), theta_plus = 2.
PhiFunction phi_anchor(const FiniteMetricSpace& space, std::size_t anchor);
/// phi(x) = ||x||_p on a positive cloud, theta_plus = 2^{1/p}.
PhiFunction phi_norm(const LpPointCloud& cloud);
/// Exhaustive check of both PhiFunction inequalities (relative slack 1e-12).
bool check_phi(const FiniteMetricSpace& space, const PhiFunction& phi);

struct ExtractedCover {
  CoverFamily family;
  /// ||f(x)|| / lambda0, present for c0plus embeddings.
  std::optional<PhiFunction> phi;
};

/// Reads a cover off an existing embedding with constant lambda0 =
/// emb.lambda < lambda < mu. c0plus embeddings yield a Pi+ cover and need
/// equal radii.
ExtractedCover extract_cover_from_embedding(const FiniteMetricSpace& space, const Embedding& emb,
                                            const Ball& b1, const Ball& b2, double mu,
                                            double lambda);

struct CoverReport {
  bool pass = true;
  std::string violation;
  std::size_t far_pairs = 0;
  std::size_t pair_count = 0;
  /// Smallest relative slack in the separation inequality.
  double worst_margin = 0.0;
};

/// Exhaustive check of coverage and the family's separation inequality over
/// the ball product (or the focus product). Relative slack 1e-12.
CoverReport verify_cover(const FiniteMetricSpace& space, const Ball& b1, const Ball& b2,
                         const CoverFamily& family, const CoverFocus* focus = nullptr);

}  // namespace c0forge
