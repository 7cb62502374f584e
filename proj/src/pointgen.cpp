// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/pointgen.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace emptybox {

std::vector<std::uint64_t> first_primes(std::size_t m) {
  std::vector<std::uint64_t> primes;
  primes.reserve(m);
  std::uint64_t candidate = 2;
  while (primes.size() < m) {
    bool is_prime = true;
    for (std::uint64_t p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(candidate);
    candidate += (candidate == 2) ? 1 : 2;
  }
  return primes;
}

double radical_inverse(std::uint64_t k, std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("radical inverse base must be >= 2");
  // reversed = digits of k in reverse order, denom = base^(digit count)
  std::uint64_t reversed = 0;
  std::uint64_t denom = 1;
  while (k > 0) {
    if (denom > std::numeric_limits<std::uint64_t>::max() / base) {
      // 2^64/base digits would be needed; out of range for practical k
      throw std::overflow_error("radical inverse index too large");
    }
    reversed = reversed * base + k % base;
    denom *= base;
    k /= base;
  }
  return static_cast<double>(reversed) / static_cast<double>(denom);
}

PointSet van_der_corput(std::size_t n) {
  PointSet out(2, {});
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(n);
    const double y = radical_inverse(k, 2);
    out.push_back(std::vector<double>{x, y});
  }
  return out;
}

PointSet halton_hammersley(std::size_t n, std::size_t d) {
  if (d < 2) {
    throw std::invalid_argument(
        "halton_hammersley needs d >= 2 (one radical-inverse axis)");
  }
  const auto primes = first_primes(d - 1);
  PointSet out(d, {});
  std::vector<double> p(d);
  for (std::size_t k = 0; k < n; ++k) {
    p[0] = static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t i = 1; i < d; ++i) {
      p[i] = radical_inverse(k, primes[i - 1]);
    }
    out.push_back(p);
  }
  return out;
}

PointSet restricted_lb_construction(std::size_t d,
                                    const std::vector<std::size_t>& counts) {
  if (d < 2) throw std::invalid_argument("construction needs d >= 2");
  if (counts.size() != d) {
    throw std::invalid_argument("counts must have one entry per axis");
  }
  for (std::size_t ni : counts) {
    if (ni < 2) {
      throw std::invalid_argument(
          "every group needs n_i >= 2 (pairs of consecutive points)");
    }
  }
  PointSet out(d, {});
  std::vector<double> p(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t j = (i + 1) % d;  // group {+x_i, -x_j}
    const std::size_t ni = counts[i];
    for (std::size_t k = 1; k <= ni; ++k) {
      std::fill(p.begin(), p.end(), 0.0);
      p[i] = static_cast<double>(k);
      p[j] = -static_cast<double>(ni + 1 - k);
      out.push_back(p);
    }
  }
  return out;
}

PointSet embed_in_unit_cube(const PointSet& points, double margin) {
  if (points.size() == 0) {
    throw std::invalid_argument("cannot embed an empty point set");
  }
  if (!(margin > 0.0 && margin < 0.5)) {
    throw std::invalid_argument("margin must lie in (0, 0.5)");
  }
  const std::size_t d = points.dim();
  std::vector<double> mn(d, std::numeric_limits<double>::infinity());
  std::vector<double> mx(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      mn[a] = std::min(mn[a], points.coord(i, a));
      mx[a] = std::max(mx[a], points.coord(i, a));
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    if (!(mx[a] > mn[a])) {
      throw std::invalid_argument("zero extent on an axis; cannot embed");
    }
  }
  PointSet out(d, {});
  std::vector<double> p(d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double t = (points.coord(i, a) - mn[a]) / (mx[a] - mn[a]);
      p[a] = margin + t * (1.0 - 2.0 * margin);
    }
    out.push_back(p);
  }
  return out;
}

double default_embed_margin(std::size_t n) {
  return 1.0 / (2.0 * (static_cast<double>(n) + 1.0));
}

PointSet grid_vertices(std::size_t k, std::size_t d) {
  if (k == 0) throw std::invalid_argument("grid_vertices needs k >= 1");
  if (d < 2) throw std::invalid_argument("grid_vertices needs d >= 2");
  PointSet out(d, {});
  std::vector<std::size_t> idx(d, 1);
  std::vector<double> p(d);
  while (true) {
    for (std::size_t a = 0; a < d; ++a) {
      p[a] = static_cast<double>(idx[a]) / static_cast<double>(k + 1);
    }
    out.push_back(p);
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (idx[a] < k) {
        ++idx[a];
        break;
      }
      idx[a] = 1;
      if (a == 0) return out;
    }
  }
}

TightConfig tight_config_from_string(const std::string& name) {
  if (name == "two_point_xi" || name == "tight2") return TightConfig::two_point_xi;
  if (name == "four_point_quarter" || name == "tight4") {
    return TightConfig::four_point_quarter;
  }
  throw std::invalid_argument("unknown tight configuration: " + name);
}

PointSet known_tight_configs(TightConfig name) {
  switch (name) {
    case TightConfig::two_point_xi: {
      const double xi = (3.0 - std::sqrt(5.0)) / 2.0;
      return PointSet::from_rows(2, {{xi, 1.0 - xi}, {1.0 - xi, xi}});
    }
    case TightConfig::four_point_quarter:
      return PointSet::from_rows(
          2, {{0.25, 0.5}, {0.5, 0.25}, {0.5, 0.75}, {0.75, 0.5}});
  }
  throw std::invalid_argument("unknown tight configuration");
}

PointSet uniform_random(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("uniform_random needs d >= 2");
  std::mt19937_64 rng(seed);
  PointSet out(d, {});
  std::vector<double> p(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      // (0,1) strictly: (j + 0.5) / 2^53 with j in [0, 2^53)
      p[a] = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace emptybox
