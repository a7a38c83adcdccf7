// SPDX-License-Identifier: Apache-2.0
//
// rissec: secrecy-rate design for RIS-assisted MIMO links under RIS-boosted eavesdropping
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rissec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rissec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kPi = 3.14159265358979323846;

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t realization,
                       std::uint64_t tag) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ realization);
  h = splitmix64(h ^ (tag * 0xd6e8feb86659fd93ULL));
  return h;
}

Rng::Rng(std::uint64_t seed, std::uint64_t realization, std::uint64_t tag)
    : engine_(mix_seed(seed, realization, tag)) {}

Complex Rng::complex_normal() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

ArrayShape default_array_shape(int elements) {
  if (elements <= 0)
    return {1, 0};
  int v = static_cast<int>(std::floor(std::sqrt(static_cast<double>(elements))));
  while (v > 1 && elements % v != 0)
    --v;
  return {v, elements / v};
}

SystemDims SystemDims::make(int n, int m, int k, int l, int lambda) {
  SystemDims d;
  d.N = n;
  d.M = m;
  d.K = k;
  d.L = l;
  d.Lambda = lambda;
  d.bs = default_array_shape(n);
  d.rx = default_array_shape(m);
  d.eve = default_array_shape(k);
  d.ris_l = default_array_shape(l);
  d.ris_m = default_array_shape(lambda);
  d.validate();
  return d;
}

void SystemDims::validate() const {
  if (N < 1 || M < 1 || K < 1)
    throw std::invalid_argument("antenna counts must be at least 1");
  if (L < 0 || Lambda < 0)
    throw std::invalid_argument("RIS element counts must be non-negative");
  if (K < M)
    throw std::invalid_argument("Eve needs at least as many antennas as RX");
  auto check = [](ArrayShape s, int count, const char *what) {
    if (count > 0 && (s.vertical < 1 || s.horizontal < 1 || s.count() != count))
      throw std::invalid_argument(std::string("array shape mismatch for ") +
                                  what);
  };
  check(bs, N, "BS");
  check(rx, M, "RX");
  check(eve, K, "Eve");
  check(ris_l, L, "legitimate RIS");
  check(ris_m, Lambda, "malicious RIS");
}

double distance(const Position &a, const Position &b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.h - b.h;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

SystemGeometry SystemGeometry::standard(double ris_l_fraction) {
  SystemGeometry g;
  const double w = g.width, l = g.length;
  g.bs = {0.0, 0.0, 10.0};
  g.rx = {w / 4.0, l, 1.5};
  g.eve = {-w / 4.0, l, 1.5};
  g.ris_m = {-w / 2.0, 7.0 * l / 8.0, 5.0};
  g.ris_l = {w / 2.0, ris_l_fraction * l, 5.0};
  return g;
}

void SystemGeometry::validate() const {
  if (!(width > 0.0) || !(length > width))
    throw std::invalid_argument("geometry needs length > width > 0");
  if (!(d0 > 0.0))
    throw std::invalid_argument("reference distance must be positive");
  for (const Position *p : {&bs, &rx, &eve, &ris_m, &ris_l})
    if (!(p->h > 0.0))
      throw std::invalid_argument("node heights must be positive");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double pathloss_db(double d, double exponent, const SystemGeometry &geom) {
  if (!(d > 0.0))
    throw std::invalid_argument("pathloss: distance must be positive");
  return geom.pl0_db - 10.0 * exponent * std::log10(d / geom.d0);
}

ComplexVector upa_response(double theta, double azimuth, int vertical,
                           int horizontal) {
  if (vertical < 1 || horizontal < 1)
    throw std::invalid_argument("upa_response: empty array");
  ComplexMatrix av(vertical, 1), ah(horizontal, 1);
  for (int m = 0; m < vertical; ++m)
    av(m, 0) = std::polar(1.0, kPi * m * std::cos(theta));
  for (int n = 0; n < horizontal; ++n)
    ah(n, 0) = std::polar(1.0, kPi * n * std::sin(theta) * std::sin(azimuth));
  return kron(av, ah).col(0);
}

ComplexVector steering(const Position &at, const Position &towards,
                       ArrayShape shape) {
  const double dx = towards.x - at.x, dy = towards.y - at.y,
               dz = towards.h - at.h;
  const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (!(d > 0.0))
    throw std::invalid_argument("steering: coincident positions");
  const double theta = std::acos(std::clamp(dz / d, -1.0, 1.0));
  const double azimuth = std::atan2(dy, dx);
  return upa_response(theta, azimuth, shape.vertical, shape.horizontal);
}

double link_gain(const Link &link, const SystemGeometry &geom) {
  return db_to_linear(
      pathloss_db(distance(link.tx, link.rx), link.exponent, geom));
}

ComplexMatrix los_component(const Link &link, const SystemGeometry &geom) {
  const ComplexVector a_rx = steering(link.rx, link.tx, link.rx_shape);
  const ComplexVector a_tx = steering(link.tx, link.rx, link.tx_shape);
  return std::sqrt(link_gain(link, geom)) * a_rx * a_tx.adjoint();
}

ComplexMatrix generate_channel(const Link &link, const SystemGeometry &geom,
                               double kappa, Rng &rng) {
  const int rows = link.rx_shape.count(), cols = link.tx_shape.count();
  if (rows == 0 || cols == 0)
    return ComplexMatrix(rows, cols);
  if (!(kappa >= 0.0))
    throw std::invalid_argument("generate_channel: negative Rician factor");
  const ComplexMatrix los = los_component(link, geom);
  if (std::isinf(kappa))
    return los;
  const double amp = std::sqrt(link_gain(link, geom));
  ComplexMatrix out(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      out(i, j) = rng.complex_normal();
  return std::sqrt(kappa / (kappa + 1.0)) * los +
         (amp * std::sqrt(1.0 / (kappa + 1.0))) * out;
}

ComplexMatrix upa_correlation(ArrayShape shape, double rho) {
  auto axis = [rho](int n) {
    ComplexMatrix r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r(i, j) = std::pow(rho, std::abs(i - j));
    return r;
  };
  if (shape.count() == 0)
    return ComplexMatrix(0, 0);
  return kron(axis(shape.vertical), axis(shape.horizontal));
}

ComplexMatrix KroneckerChannel::second_moment() const {
  ComplexMatrix q = mean.adjoint() * mean;
  if (scale > 0.0 && sigma.size() > 0)
    q += (scale * scale) * sigma.trace() * xi.transpose();
  return hermitian_part(q);
}

namespace {

KroneckerChannel kronecker_link(const Link &link, const SystemGeometry &geom,
                                double kappa, double rho) {
  KroneckerChannel k;
  const int rows = link.rx_shape.count(), cols = link.tx_shape.count();
  if (rows == 0 || cols == 0) {
    k.mean = ComplexMatrix(rows, cols);
    k.sigma = ComplexMatrix::Zero(rows, rows);
    k.xi = ComplexMatrix::Zero(cols, cols);
    return k;
  }
  const bool los_only = std::isinf(kappa);
  k.mean = (los_only ? 1.0 : std::sqrt(kappa / (kappa + 1.0))) *
           los_component(link, geom);
  k.sigma = upa_correlation(link.rx_shape, rho);
  k.xi = upa_correlation(link.tx_shape, rho);
  k.scale = los_only ? 0.0
                     : std::sqrt(link_gain(link, geom) / (kappa + 1.0));
  return k;
}

} // namespace

Link make_link(const Scenario &s, LinkTag tag) {
  const SystemGeometry &g = s.geom;
  const SystemDims &d = s.dims;
  switch (tag) {
  case LinkTag::direct:
    return {g.bs, g.rx, d.bs, d.rx, g.exponent_direct};
  case LinkTag::bs_ris_l:
    return {g.bs, g.ris_l, d.bs, d.ris_l, g.exponent_ris};
  case LinkTag::ris_l_rx:
    return {g.ris_l, g.rx, d.ris_l, d.rx, g.exponent_ris};
  case LinkTag::bs_eve:
    return {g.bs, g.eve, d.bs, d.eve, g.exponent_direct};
  case LinkTag::ris_l_eve:
    return {g.ris_l, g.eve, d.ris_l, d.eve, g.exponent_ris};
  case LinkTag::bs_ris_m:
    return {g.bs, g.ris_m, d.bs, d.ris_m, g.exponent_ris};
  case LinkTag::ris_m_eve:
    return {g.ris_m, g.eve, d.ris_m, d.eve, g.exponent_ris};
  }
  throw std::invalid_argument("unknown link");
}

StatisticalCsi build_statistical_csi(const SystemGeometry &geom,
                                     const SystemDims &dims, double kappa,
                                     double rho_corr) {
  Scenario s{geom, dims, kappa, rho_corr};
  StatisticalCsi csi;
  csi.kappa = kappa;
  csi.h_e = kronecker_link(make_link(s, LinkTag::bs_eve), geom, kappa, rho_corr);
  csi.g_e =
      kronecker_link(make_link(s, LinkTag::ris_l_eve), geom, kappa, rho_corr);
  csi.q_he = csi.h_e.second_moment();
  csi.q_ge = csi.g_e.second_moment();
  return csi;
}

StatisticalCsi perfect_csi(const ComplexMatrix &h_e, const ComplexMatrix &g_e) {
  StatisticalCsi csi;
  csi.kappa = std::numeric_limits<double>::infinity();
  csi.h_e.mean = h_e;
  csi.h_e.sigma = ComplexMatrix::Zero(h_e.rows(), h_e.rows());
  csi.h_e.xi = ComplexMatrix::Zero(h_e.cols(), h_e.cols());
  csi.g_e.mean = g_e;
  csi.g_e.sigma = ComplexMatrix::Zero(g_e.rows(), g_e.rows());
  csi.g_e.xi = ComplexMatrix::Zero(g_e.cols(), g_e.cols());
  csi.q_he = csi.h_e.second_moment();
  csi.q_ge = csi.g_e.second_moment();
  return csi;
}

ComplexMatrix sample_kronecker(const KroneckerChannel &ch, Rng &rng) {
  const Eigen::Index rows = ch.mean.rows(), cols = ch.mean.cols();
  if (rows == 0 || cols == 0 || ch.scale == 0.0)
    return ch.mean;
  ComplexMatrix w(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      w(i, j) = rng.complex_normal();
  return ch.mean + ch.scale * psd_sqrt(ch.sigma) * w *
                       psd_sqrt(ch.xi).transpose();
}

EveChannels sample_eve_channels(const StatisticalCsi &csi, Rng &rng) {
  EveChannels out;
  out.h_e = sample_kronecker(csi.h_e, rng);
  out.g_e = sample_kronecker(csi.g_e, rng);
  return out;
}

void ChannelSet::validate(const SystemDims &d) const {
  auto check = [](const ComplexMatrix &a, int r, int c, const char *what) {
    if (a.rows() != r || a.cols() != c)
      throw DimensionError(std::string("channel ") + what + " has wrong shape");
    require_finite(a, what);
  };
  check(H, d.M, d.N, "H");
  check(H1, d.L, d.N, "H1");
  check(H2, d.M, d.L, "H2");
  check(H_E, d.K, d.N, "H_E");
  check(G_E, d.K, d.L, "G_E");
  check(G1, d.Lambda, d.N, "G1");
  check(G2, d.K, d.Lambda, "G2");
}

EveKnowledge eve_los_knowledge(const SystemGeometry &geom,
                               const SystemDims &dims) {
  EveKnowledge k;
  if (dims.Lambda == 0) {
    k.g1 = ComplexVector(0);
    k.g2 = steering(geom.bs, geom.ris_m, dims.bs);
    return k;
  }
  const double pl = db_to_linear(pathloss_db(distance(geom.bs, geom.ris_m),
                                             geom.exponent_ris, geom));
  k.g1 = std::sqrt(pl) * steering(geom.ris_m, geom.bs, dims.ris_m);
  k.g2 = steering(geom.bs, geom.ris_m, dims.bs);
  return k;
}

ChannelSet draw_channel_set(const Scenario &s, const StatisticalCsi &csi,
                            std::uint64_t seed, std::uint64_t realization) {
  auto draw = [&](LinkTag tag) {
    Rng rng(seed, realization, static_cast<std::uint64_t>(tag));
    return generate_channel(make_link(s, tag), s.geom, s.kappa, rng);
  };
  ChannelSet ch;
  ch.H = draw(LinkTag::direct);
  ch.H1 = draw(LinkTag::bs_ris_l);
  ch.H2 = draw(LinkTag::ris_l_rx);
  ch.G1 = draw(LinkTag::bs_ris_m);
  ch.G2 = draw(LinkTag::ris_m_eve);
  {
    Rng rng(seed, realization, static_cast<std::uint64_t>(LinkTag::bs_eve));
    ch.H_E = sample_kronecker(csi.h_e, rng);
  }
  {
    Rng rng(seed, realization, static_cast<std::uint64_t>(LinkTag::ris_l_eve));
    ch.G_E = sample_kronecker(csi.g_e, rng);
  }
  ch.validate(s.dims);
  return ch;
}

} // namespace rissec
