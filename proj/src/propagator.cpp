// Copyright 2026 The Decouple Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "decouple/propagator.hpp"

#include <cmath>
#include <string>

#include "decouple/errors.hpp"

namespace decouple {

namespace {

Eigen::MatrixXcd exp_hermitian(const Eigen::MatrixXcd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues() * (-dt)).unaryExpr([](double a) {
        return std::complex<double>(std::cos(a), std::sin(a));
      });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd exp_symmetric(const Eigen::MatrixXd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::ArrayXd angle = es.eigenvalues().array() * (-dt);
  Eigen::MatrixXcd out(h.rows(), h.cols());
  out.real().noalias() = v * angle.cos().matrix().asDiagonal() * v.transpose();
  out.imag().noalias() = v * angle.sin().matrix().asDiagonal() * v.transpose();
  return out;
}

bool all_real(const Blocks& blocks) {
  for (const auto& b : blocks) {
    if (b.size() > 0 && b.imag().cwiseAbs().maxCoeff() != 0.0) return false;
  }
  return true;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("evolution.dt must be positive");
  if (substeps < 1) throw ConfigError("evolution.substeps must be >= 1");
}

int default_substeps(const AnisotropyConfig& cfg, double dt, int per_period) {
  const double fastest = cfg.base_rate * std::max(std::abs(cfg.r_lo), std::abs(cfg.r_hi));
  const double period = 2.0 * std::numbers::pi / fastest;
  return std::max(1, static_cast<int>(std::ceil(per_period * dt / period - 1e-9)));
}

Eigen::MatrixXcd step_unitary(const Eigen::MatrixXcd& h, double dt) {
  if (hermiticity_residual(h) > 1e-10) {
    throw ValidationError("step_unitary expects a Hermitian matrix");
  }
  return exp_hermitian(h, dt);
}

double entanglement_fidelity(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw DimensionError("propagator is not square");
  return std::norm(u.trace() / static_cast<double>(u.rows()));
}

IntervalPropagator::IntervalPropagator(const TermList& terms, double dt,
                                       int substeps, double base_rate)
    : basis_(SectorBasis::for_terms(terms)),
      dt_(dt),
      substeps_(substeps),
      base_rate_(base_rate),
      time_dependent_(terms.time_dependent()) {
  EvolutionConfig{dt, substeps, 0}.validate();
  if (!time_dependent_) {
    for (const auto& block : basis_.project(terms.matrix())) {
      static_w_.push_back(exp_hermitian(block, dt));
    }
    return;
  }
  TermList fixed{terms.n_qubits, {}};
  TermList modulated{terms.n_qubits, {}};
  for (const auto& t : terms.terms) {
    PauliTerm copy = t;
    copy.modulated = false;
    (t.modulated ? modulated : fixed).terms.push_back(copy);
  }
  fixed_part_ = basis_.project(fixed.matrix());
  modulated_part_ = basis_.project(modulated.matrix());
  real_blocks_ = all_real(fixed_part_) && all_real(modulated_part_);
}

Blocks IntervalPropagator::interval(std::size_t m,
                                    const AnisotropyRealization* real) const {
  if (!time_dependent_) return static_w_;
  if (real == nullptr) {
    throw ConfigError("time-dependent system needs an anisotropy realization");
  }
  // Fourth-order commutator-free Magnus step per substep: two exponentials
  // of F + c M with the anisotropy sampled at the Gauss points.
  const double h = dt_ / substeps_;
  const double r3 = std::sqrt(3.0);
  const double a1 = 0.25 + r3 / 6.0;
  const double a2 = 0.25 - r3 / 6.0;
  Blocks w = basis_.identity();
  auto apply = [&](double fixed_weight, double delta) {
    for (std::size_t s = 0; s < w.size(); ++s) {
      Eigen::MatrixXcd e;
      if (real_blocks_) {
        const Eigen::MatrixXd hs =
            fixed_weight * fixed_part_[s].real() + delta * modulated_part_[s].real();
        e = exp_symmetric(hs, h);
      } else {
        e = exp_hermitian(fixed_weight * fixed_part_[s] + delta * modulated_part_[s], h);
      }
      w[s] = e * w[s];
    }
  };
  for (int k = 0; k < substeps_; ++k) {
    const double t0 = (static_cast<double>(m) + static_cast<double>(k) / substeps_) * dt_;
    const double d1 = anisotropy_delta(t0 + (0.5 - r3 / 6.0) * h, *real, base_rate_);
    const double d2 = anisotropy_delta(t0 + (0.5 + r3 / 6.0) * h, *real, base_rate_);
    apply(a1 + a2, a1 * d1 + a2 * d2);
    apply(a1 + a2, a2 * d1 + a1 * d2);
  }
  return w;
}

const PauliAction& PauliActionCache::get(const PauliString& g) {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  if (cache_.size() >= capacity_) cache_.clear();
  return cache_.emplace(g, basis_.action(g)).first->second;
}

ToggledTrajectory::ToggledTrajectory(const SectorBasis& basis)
    : dim_(static_cast<double>(basis.dim())), u_(basis.identity()), scratch_(u_.size()) {}

void ToggledTrajectory::step(const PauliAction& frame, const Blocks& w) {
  for (std::size_t s = 0; s < u_.size(); ++s) {
    const std::size_t t = frame.target[s];
    scratch_[s] = frame.forward[s] * u_[s];
    Eigen::MatrixXcd moved = w[t] * scratch_[s];
    u_[s] = frame.backward[s] * moved;
  }
}

double ToggledTrajectory::fidelity() const { return blocks_trace_abs2(u_, dim_); }

double ToggledTrajectory::unitarity_residual() const {
  return decouple::unitarity_residual(u_);
}

std::vector<std::vector<FidelitySample>> evolve_fidelities(
    const IntervalPropagator& prop, const std::vector<const FrameSequence*>& seqs,
    std::size_t n_intervals, std::size_t stride,
    const AnisotropyRealization* real) {
  if (stride == 0) throw ConfigError("sample stride must be >= 1");
  for (const FrameSequence* seq : seqs) {
    if (seq->frames.size() < n_intervals) {
      throw ConfigError("frame sequence shorter than the evolution window");
    }
  }
  const SectorBasis& basis = prop.basis();
  PauliActionCache cache(basis);
  std::vector<ToggledTrajectory> traj(seqs.size(), ToggledTrajectory(basis));
  std::vector<std::vector<FidelitySample>> out(seqs.size());
  Blocks w = prop.time_dependent() ? Blocks{} : prop.static_interval();
  for (std::size_t m = 0; m < n_intervals; ++m) {
    if (prop.time_dependent()) w = prop.interval(m, real);
    for (std::size_t k = 0; k < seqs.size(); ++k) {
      traj[k].step(cache.get(seqs[k]->frames[m]), w);
    }
    if ((m + 1) % stride != 0) continue;
    const double t = static_cast<double>(m + 1) * prop.dt();
    for (std::size_t k = 0; k < seqs.size(); ++k) {
      const double residual = traj[k].unitarity_residual();
      if (!(residual < kUnitarityTol)) {
        throw NumericalError("sequence " + std::to_string(k) +
                             ": unitarity residual " + std::to_string(residual) +
                             " at t = " + std::to_string(t));
      }
      out[k].push_back({t, traj[k].fidelity(), residual});
    }
  }
  return out;
}

std::vector<EvolutionSample> toggled_evolution(
    const TermList& system, const FrameSequence& frames,
    const EvolutionConfig& cfg, const std::optional<AnisotropyRealization>& real,
    double base_rate) {
  cfg.validate();
  const std::size_t stride = cfg.sample_stride == 0 ? frames.cycle_len : cfg.sample_stride;
  if (stride == 0) throw ConfigError("sample stride must be >= 1");
  if (system.time_dependent() && !real) {
    throw ConfigError("time-dependent system needs an anisotropy realization");
  }
  for (const auto& f : frames.frames) {
    if (f.n_qubits() != system.n_qubits) {
      throw DimensionError("frames act on " + std::to_string(f.n_qubits()) +
                           " qubits, system on " + std::to_string(system.n_qubits));
    }
  }
  const IntervalPropagator prop(system, cfg.dt, cfg.substeps, base_rate);
  const SectorBasis& basis = prop.basis();
  PauliActionCache cache(basis);
  ToggledTrajectory traj(basis);
  const AnisotropyRealization* r = real ? &*real : nullptr;
  std::vector<EvolutionSample> out;
  const std::size_t n = frames.frames.size() - frames.frames.size() % stride;
  for (std::size_t m = 0; m < n; ++m) {
    if (prop.time_dependent()) {
      traj.step(cache.get(frames.frames[m]), prop.interval(m, r));
    } else {
      traj.step(cache.get(frames.frames[m]), prop.static_interval());
    }
    if ((m + 1) % stride != 0) continue;
    const double t = static_cast<double>(m + 1) * cfg.dt;
    if (!(traj.unitarity_residual() < kUnitarityTol)) {
      throw NumericalError("unitarity lost at t = " + std::to_string(t));
    }
    out.push_back({t, basis.expand(traj.blocks())});
  }
  return out;
}

}  // namespace decouple
