#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mhiforge/tensor.hpp"

namespace mhiforge {

// Per-position spatial weights derived from a channel-averaged feature map:
// alpha is the softmax over all H*W positions, alpha_norm its min-max
// rescaling to [0,1]. A constant map (max(alpha) == min(alpha)) is the
// degenerate case and yields alpha_norm of all ones so that uniform
// saliency never attenuates features.
struct SaliencyMap {
  int height = 0;
  int width = 0;
  std::vector<double> alpha;
  std::vector<double> alpha_norm;
};

// Mean over the channel axis (axis 0), all other axes preserved.
// Accumulates in double; the returned tensor stores float.
FeatureVolume channel_global_average_pool(const FeatureVolume& features);

// Double-precision pooled map, used by the saliency path directly so the
// 1e-9 softmax identities are not degraded by a float round-trip.
std::vector<double> channel_average_pool_f64(const FeatureVolume& features);

SaliencyMap saliency_from_pooled(int height, int width,
                                 std::span<const double> pooled);
SaliencyMap saliency_from_features(const FeatureVolume& features);  // (C,H,W)

// out(c,[t,]i,j) = features(c,[t,]i,j) * alpha_norm(i,j); the weights
// broadcast over channels and, for rank-4 input, over time.
FeatureVolume apply_saliency(const FeatureVolume& features,
                             const SaliencyMap& map);

// Channel-mixing projections of the non-local block. theta/phi/g map
// C -> C/2, w_z maps C/2 -> C, all stored as (out, in) matrices.
// pool_factor subsamples the spatial axes of the phi and g outputs by
// stride-p max pooling (ceil mode), shrinking the key/value position set.
struct NonLocalParams {
  FeatureVolume theta;
  FeatureVolume phi;
  FeatureVolume g;
  FeatureVolume w_z;
  int pool_factor = 1;

  void validate(std::uint32_t channels) const;
};

// Params container: four concatenated MHT1 tensors theta, phi, g, w_z.
NonLocalParams load_nonlocal_params(const std::filesystem::path& path);
void save_nonlocal_params(const std::filesystem::path& path,
                          const NonLocalParams& params);

struct NonLocalDetail {
  std::size_t query_count = 0;
  std::size_t key_count = 0;
  std::vector<double> attention;  // query_count x key_count, rows sum to 1
};

// Self-attention over all T*H*W positions of a (C,T,H,W) volume with a
// residual connection: z = w_z * softmax(theta(X)^T phi(X)) g(X) + X.
FeatureVolume non_local_block(const FeatureVolume& x,
                              const NonLocalParams& params,
                              NonLocalDetail* detail = nullptr);

}  // namespace mhiforge
