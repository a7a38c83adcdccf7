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

#pragma once

// Geometry, pathloss and Rician/UPA channel generation, plus the Kronecker
// statistical model used for the eavesdropper-side channels.

#include "rissec/numerics.hpp"

#include <cstdint>
#include <random>

namespace rissec {

/// Counter-based seeding: one independent mt19937_64 per (seed, realization,
/// stream tag). Scheduling order never changes the numbers drawn.
class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t realization, std::uint64_t tag);
  explicit Rng(std::uint64_t seed) : Rng(seed, 0, 0) {}
  /// CN(0, 1) sample.
  Complex complex_normal();
  double uniform(double lo, double hi);
  std::mt19937_64 &engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t realization,
                       std::uint64_t tag);

struct ArrayShape {
  int vertical = 1;
  int horizontal = 1;
  int count() const { return vertical * horizontal; }
};

/// A_v is the largest divisor of `elements` not above sqrt(elements).
ArrayShape default_array_shape(int elements);

struct SystemDims {
  int N = 8;      // BS antennas
  int M = 4;      // RX antennas
  int K = 4;      // Eve antennas
  int L = 20;     // legitimate RIS elements
  int Lambda = 0; // malicious RIS elements
  ArrayShape bs, rx, eve, ris_l, ris_m;

  /// Fills the array shapes from the counts using default_array_shape.
  static SystemDims make(int n, int m, int k, int l, int lambda);
  void validate() const;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
};

double distance(const Position &a, const Position &b);

struct SystemGeometry {
  double width = 15.0;
  double length = 90.0;
  Position bs, rx, eve, ris_m, ris_l;
  double d0 = 1.0;
  double pl0_db = -30.0;
  double exponent_direct = 5.0; // BS->RX and BS->Eve
  double exponent_ris = 2.0;    // every link touching a RIS

  /// Node layout on the w x l rectangle. `ris_l_fraction` places the
  /// legitimate RIS at y = fraction * length.
  static SystemGeometry standard(double ris_l_fraction);
  static SystemGeometry setup_a() { return standard(1.0 / 8.0); }
  static SystemGeometry setup_b() { return standard(7.0 / 8.0); }
  void validate() const;
};

double db_to_linear(double db);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// PL0 - 10 eps log10(d / d0) in dB.
double pathloss_db(double d, double exponent, const SystemGeometry &geom);

/// a_v(theta) kron a_h(theta, azimuth) with
///   a_v[m] = exp(j pi m cos(theta)), a_h[n] = exp(j pi n sin(theta) sin(az)).
ComplexVector upa_response(double theta, double azimuth, int vertical,
                           int horizontal);

/// Steering vector of the array at `at` towards `towards`.
ComplexVector steering(const Position &at, const Position &towards,
                       ArrayShape shape);

struct Link {
  Position tx;
  Position rx;
  ArrayShape tx_shape;
  ArrayShape rx_shape;
  double exponent = 2.0;
};

/// Linear power gain of the link.
double link_gain(const Link &link, const SystemGeometry &geom);

/// sqrt(PL) a_rx a_tx^H (unit-amplitude LOS scaled by pathloss).
ComplexMatrix los_component(const Link &link, const SystemGeometry &geom);

/// sqrt(PL) (sqrt(k/(k+1)) H_los + sqrt(1/(k+1)) H_nlos) with CN(0,1) NLOS
/// entries. k = +inf gives the pure LOS matrix.
ComplexMatrix generate_channel(const Link &link, const SystemGeometry &geom,
                               double kappa, Rng &rng);

/// Exponential correlation rho^|i-j| along each UPA axis, Kronecker combined.
ComplexMatrix upa_correlation(ArrayShape shape, double rho);

/// Mean and Kronecker covariance of one Rician link: draws are
/// mean + scale * Sigma^{1/2} W Xi^{T/2}, scale = sqrt(PL / (k+1)).
struct KroneckerChannel {
  ComplexMatrix mean;  // rows x cols
  ComplexMatrix sigma; // rows x rows (receive side)
  ComplexMatrix xi;    // cols x cols (transmit side)
  double scale = 0.0;

  /// E[Y^H Y] = M^H M + scale^2 tr(Sigma) Xi^T.
  ComplexMatrix second_moment() const;
};

struct StatisticalCsi {
  KroneckerChannel h_e; // BS -> Eve, K x N
  KroneckerChannel g_e; // RIS_L -> Eve, K x L
  ComplexMatrix q_he;   // N x N
  ComplexMatrix q_ge;   // L x L
  double kappa = 0.0;
};

StatisticalCsi build_statistical_csi(const SystemGeometry &geom,
                                     const SystemDims &dims, double kappa,
                                     double rho_corr);

/// Degenerate statistics with zero covariance and the given means, so that
/// Q_HE = H_E^H H_E and Q_GE = G_E^H G_E.
StatisticalCsi perfect_csi(const ComplexMatrix &h_e, const ComplexMatrix &g_e);

ComplexMatrix sample_kronecker(const KroneckerChannel &ch, Rng &rng);

struct EveChannels {
  ComplexMatrix h_e;
  ComplexMatrix g_e;
};
EveChannels sample_eve_channels(const StatisticalCsi &csi, Rng &rng);

struct ChannelSet {
  ComplexMatrix H;   // M x N
  ComplexMatrix H1;  // L x N
  ComplexMatrix H2;  // M x L
  ComplexMatrix H_E; // K x N
  ComplexMatrix G_E; // K x L
  ComplexMatrix G1;  // Lambda x N
  ComplexMatrix G2;  // K x Lambda
  void validate(const SystemDims &dims) const;
};

/// What Eve knows of the BS -> RIS_M link: G1_hat = g1 g2^H.
struct EveKnowledge {
  ComplexVector g1; // Lambda
  ComplexVector g2; // N
};

EveKnowledge eve_los_knowledge(const SystemGeometry &geom,
                               const SystemDims &dims);

/// Stream tags for the per-link RNG streams.
enum class LinkTag : std::uint64_t {
  direct = 1,
  bs_ris_l = 2,
  ris_l_rx = 3,
  bs_eve = 4,
  ris_l_eve = 5,
  bs_ris_m = 6,
  ris_m_eve = 7,
};

struct Scenario {
  SystemGeometry geom;
  SystemDims dims;
  double kappa = 20.893;
  double rho_corr = 0.5;
};

Link make_link(const Scenario &s, LinkTag tag);

/// One full realization. Each link draws from its own stream, so the same
/// (seed, realization) gives the same channels whatever else changes.
ChannelSet draw_channel_set(const Scenario &s, const StatisticalCsi &csi,
                            std::uint64_t seed, std::uint64_t realization);

} // namespace rissec
