#include "mhiforge/attention.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "mhiforge/error.hpp"

namespace mhiforge {

FeatureVolume channel_global_average_pool(const FeatureVolume& features) {
  std::vector<double> pooled = channel_average_pool_f64(features);
  std::vector<std::uint32_t> dims(features.dims().begin() + 1,
                                  features.dims().end());
  std::vector<float> out(pooled.size());
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    out[i] = static_cast<float>(pooled[i]);
  }
  return FeatureVolume(std::move(dims), std::move(out));
}

std::vector<double> channel_average_pool_f64(const FeatureVolume& features) {
  if (features.rank() < 2) {
    fail(Errc::DimensionMismatch, "channel pooling needs rank >= 2");
  }
  const std::size_t channels = features.dim(0);
  const std::size_t positions = features.size() / channels;
  std::vector<double> pooled(positions, 0.0);
  const float* v = features.values().data();
  for (std::size_t c = 0; c < channels; ++c) {
    const float* slice = v + c * positions;
    for (std::size_t i = 0; i < positions; ++i) {
      pooled[i] += slice[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(channels);
  for (double& p : pooled) p *= inv;
  return pooled;
}

SaliencyMap saliency_from_pooled(int height, int width,
                                 std::span<const double> pooled) {
  const std::size_t n = static_cast<std::size_t>(height) * width;
  if (pooled.size() != n || n == 0) {
    fail(Errc::DimensionMismatch, "pooled map size does not match H*W");
  }
  for (double z : pooled) {
    if (!std::isfinite(z)) fail(Errc::NonFiniteInput, "pooled map not finite");
  }

  SaliencyMap map;
  map.height = height;
  map.width = width;
  map.alpha.resize(n);

  const double zmax = *std::max_element(pooled.begin(), pooled.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    map.alpha[i] = std::exp(pooled[i] - zmax);
    sum += map.alpha[i];
  }
  for (double& a : map.alpha) a /= sum;

  const auto [amin_it, amax_it] =
      std::minmax_element(map.alpha.begin(), map.alpha.end());
  const double amin = *amin_it, amax = *amax_it;
  map.alpha_norm.resize(n);
  if (amax == amin) {
    std::fill(map.alpha_norm.begin(), map.alpha_norm.end(), 1.0);
  } else {
    const double inv = 1.0 / (amax - amin);
    for (std::size_t i = 0; i < n; ++i) {
      map.alpha_norm[i] = (map.alpha[i] - amin) * inv;
    }
  }
  return map;
}

SaliencyMap saliency_from_features(const FeatureVolume& features) {
  if (features.rank() != 3) {
    fail(Errc::DimensionMismatch,
         "saliency expects a (C,H,W) feature map, got rank " +
             std::to_string(features.rank()));
  }
  if (!features.all_finite()) {
    fail(Errc::NonFiniteInput, "feature map contains non-finite values");
  }
  std::vector<double> pooled = channel_average_pool_f64(features);
  return saliency_from_pooled(static_cast<int>(features.dim(1)),
                              static_cast<int>(features.dim(2)), pooled);
}

FeatureVolume apply_saliency(const FeatureVolume& features,
                             const SaliencyMap& map) {
  if (features.rank() != 3 && features.rank() != 4) {
    fail(Errc::DimensionMismatch, "apply_saliency expects rank 3 or 4");
  }
  const std::size_t h = features.dim(features.rank() - 2);
  const std::size_t w = features.dim(features.rank() - 1);
  if (h != static_cast<std::size_t>(map.height) ||
      w != static_cast<std::size_t>(map.width)) {
    fail(Errc::DimensionMismatch,
         "saliency map " + std::to_string(map.height) + "x" +
             std::to_string(map.width) + " does not match feature spatial " +
             std::to_string(h) + "x" + std::to_string(w));
  }
  const std::size_t spatial = h * w;
  const std::size_t planes = features.size() / spatial;  // C or C*T
  FeatureVolume out(features.dims());
  const float* src = features.values().data();
  float* dst = out.values().data();
#pragma omp parallel for schedule(static)
  for (long long p = 0; p < static_cast<long long>(planes); ++p) {
    const float* s = src + static_cast<std::size_t>(p) * spatial;
    float* d = dst + static_cast<std::size_t>(p) * spatial;
    for (std::size_t i = 0; i < spatial; ++i) {
      d[i] = static_cast<float>(s[i] * map.alpha_norm[i]);
    }
  }
  return out;
}

namespace {

void require_matrix(const FeatureVolume& m, std::uint32_t rows,
                    std::uint32_t cols, const char* name) {
  if (m.rank() != 2 || m.dim(0) != rows || m.dim(1) != cols) {
    fail(Errc::DimensionMismatch,
         std::string(name) + " must be a " + std::to_string(rows) + "x" +
             std::to_string(cols) + " matrix");
  }
}

}  // namespace

void NonLocalParams::validate(std::uint32_t channels) const {
  if (channels == 0 || channels % 2 != 0) {
    fail(Errc::DimensionMismatch,
         "channel count must be even, got " + std::to_string(channels));
  }
  const std::uint32_t half = channels / 2;
  require_matrix(theta, half, channels, "theta");
  require_matrix(phi, half, channels, "phi");
  require_matrix(g, half, channels, "g");
  require_matrix(w_z, channels, half, "w_z");
  if (pool_factor < 1) {
    fail(Errc::DimensionMismatch, "pool_factor must be >= 1");
  }
}

NonLocalParams load_nonlocal_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::FileNotFound, "cannot open " + path.string());
  NonLocalParams p;
  p.theta = read_mht(in, path.string() + " (theta)");
  p.phi = read_mht(in, path.string() + " (phi)");
  p.g = read_mht(in, path.string() + " (g)");
  p.w_z = read_mht(in, path.string() + " (w_z)");
  return p;
}

void save_nonlocal_params(const std::filesystem::path& path,
                          const NonLocalParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::FileNotFound, "cannot write " + path.string());
  write_mht(out, params.theta);
  write_mht(out, params.phi);
  write_mht(out, params.g);
  write_mht(out, params.w_z);
}

FeatureVolume non_local_block(const FeatureVolume& x,
                              const NonLocalParams& params,
                              NonLocalDetail* detail) {
  if (x.rank() != 4) {
    fail(Errc::DimensionMismatch,
         "non-local block expects a (C,T,H,W) volume, got rank " +
             std::to_string(x.rank()));
  }
  const std::size_t channels = x.dim(0);
  params.validate(static_cast<std::uint32_t>(channels));
  const std::size_t half = channels / 2;
  const std::size_t tdim = x.dim(1), hdim = x.dim(2), wdim = x.dim(3);
  const std::size_t pos = tdim * hdim * wdim;
  const std::size_t p = static_cast<std::size_t>(params.pool_factor);
  const std::size_t hp = (hdim + p - 1) / p;
  const std::size_t wp = (wdim + p - 1) / p;
  const std::size_t kpos = tdim * hp * wp;

  const float* xv = x.values().data();
  const float* th = params.theta.values().data();
  const float* ph = params.phi.values().data();
  const float* gm = params.g.values().data();
  const float* wz = params.w_z.values().data();

  // 1x1x1 projections: proj[m*pos + i] = sum_c M[m,c] * x[c, i]
  auto project = [&](const float* mat) {
    std::vector<double> out(half * pos);
#pragma omp parallel for schedule(static)
    for (long long m = 0; m < static_cast<long long>(half); ++m) {
      double* row = out.data() + static_cast<std::size_t>(m) * pos;
      std::fill(row, row + pos, 0.0);
      for (std::size_t c = 0; c < channels; ++c) {
        const double mc = mat[static_cast<std::size_t>(m) * channels + c];
        const float* xc = xv + c * pos;
        for (std::size_t i = 0; i < pos; ++i) {
          row[i] += mc * xc[i];
        }
      }
    }
    return out;
  };

  // stride-p max pooling (ceil mode) over the spatial axes only
  auto pool = [&](const std::vector<double>& full) {
    if (p == 1) return full;
    std::vector<double> out(half * kpos);
#pragma omp parallel for schedule(static)
    for (long long m = 0; m < static_cast<long long>(half); ++m) {
      const double* src = full.data() + static_cast<std::size_t>(m) * pos;
      double* dst = out.data() + static_cast<std::size_t>(m) * kpos;
      for (std::size_t t = 0; t < tdim; ++t) {
        for (std::size_t ph_i = 0; ph_i < hp; ++ph_i) {
          for (std::size_t pw_i = 0; pw_i < wp; ++pw_i) {
            const std::size_t h0 = ph_i * p, w0 = pw_i * p;
            const std::size_t h1 = std::min(h0 + p, hdim);
            const std::size_t w1 = std::min(w0 + p, wdim);
            double best = src[(t * hdim + h0) * wdim + w0];
            for (std::size_t hh = h0; hh < h1; ++hh) {
              for (std::size_t ww = w0; ww < w1; ++ww) {
                best = std::max(best, src[(t * hdim + hh) * wdim + ww]);
              }
            }
            dst[(t * hp + ph_i) * wp + pw_i] = best;
          }
        }
      }
    }
    return out;
  };

  const std::vector<double> theta_x = project(th);
  const std::vector<double> phi_k = pool(project(ph));
  const std::vector<double> g_k = pool(project(gm));

  if (detail != nullptr) {
    detail->query_count = pos;
    detail->key_count = kpos;
    detail->attention.assign(pos * kpos, 0.0);
  }

  FeatureVolume z(x.dims());
  float* zv = z.values().data();

#pragma omp parallel
  {
    std::vector<double> logits(kpos);
    std::vector<double> attended(half);
#pragma omp for schedule(static)
    for (long long qi = 0; qi < static_cast<long long>(pos); ++qi) {
      const std::size_t i = static_cast<std::size_t>(qi);
      double lmax = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < kpos; ++j) {
        double dot = 0.0;
        for (std::size_t m = 0; m < half; ++m) {
          dot += theta_x[m * pos + i] * phi_k[m * kpos + j];
        }
        logits[j] = dot;
        lmax = std::max(lmax, dot);
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < kpos; ++j) {
        logits[j] = std::exp(logits[j] - lmax);
        sum += logits[j];
      }
      const double inv = 1.0 / sum;
      for (std::size_t j = 0; j < kpos; ++j) logits[j] *= inv;
      if (detail != nullptr) {
        std::copy(logits.begin(), logits.end(),
                  detail->attention.begin() + i * kpos);
      }
      for (std::size_t m = 0; m < half; ++m) {
        double acc = 0.0;
        const double* gr = g_k.data() + m * kpos;
        for (std::size_t j = 0; j < kpos; ++j) {
          acc += logits[j] * gr[j];
        }
        attended[m] = acc;
      }
      for (std::size_t c = 0; c < channels; ++c) {
        double acc = 0.0;
        const float* wr = wz + c * half;
        for (std::size_t m = 0; m < half; ++m) {
          acc += static_cast<double>(wr[m]) * attended[m];
        }
        zv[c * pos + i] = static_cast<float>(acc + xv[c * pos + i]);
      }
    }
  }
  return z;
}

}  // namespace mhiforge
