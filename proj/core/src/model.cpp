#include "qtherm/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qtherm {

namespace {

constexpr int kMaxFactorRank = 8;
constexpr double kFactorTol = 1e-12;

void factorize(JumpChannel& ch) {
  Eigen::JacobiSVD<Mat> svd(ch.op, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cutoff = kFactorTol * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  ch.op_norm_sq = sv.size() ? sv[0] * sv[0] : 0.0;
  if (rank == 0 || rank > kMaxFactorRank) {
    ch.factor_rank = 0;
    return;
  }
  ch.left = svd.matrixU().leftCols(rank) * sv.head(rank).cast<Complex>().asDiagonal();
  ch.right = svd.matrixV().leftCols(rank);
  ch.factor_gram = ch.left.adjoint() * ch.left;
  ch.factor_rank = rank;
}

}  // namespace

JumpChannel JumpChannel::make(double omega, double rate, Mat op) {
  if (op.rows() != op.cols()) throw std::invalid_argument("JumpChannel: op must be square");
  if (!all_finite(op)) throw std::invalid_argument("JumpChannel: op has non-finite entries");
  if (rate < 0.0) throw std::invalid_argument("JumpChannel: rate must be >= 0");
  JumpChannel ch;
  ch.omega = omega;
  ch.rate = rate;
  ch.op = std::move(op);
  ch.op_dag_op = ch.op.adjoint() * ch.op;
  factorize(ch);
  return ch;
}

const BathSpec* LindbladModel::find_bath(const std::string& label) const {
  for (const auto& b : baths)
    if (b.label == label) return &b;
  return nullptr;
}

LindbladModel LindbladModel::make(double hbar, Mat hamiltonian, std::vector<BathSpec> baths) {
  if (hbar <= 0.0) throw std::invalid_argument("LindbladModel: hbar must be > 0");
  if (hamiltonian.rows() != hamiltonian.cols())
    throw std::invalid_argument("LindbladModel: H must be square");
  LindbladModel m;
  m.hbar = hbar;
  m.hamiltonian = std::move(hamiltonian);
  m.baths = std::move(baths);
  for (const auto& b : m.baths)
    for (const auto& ch : b.channels)
      if (ch.op.rows() != m.hamiltonian.rows())
        throw std::invalid_argument("LindbladModel: channel dimension mismatch in bath " + b.label);
  Mat off = m.hamiltonian;
  off.diagonal().setZero();
  m.hamiltonian_diagonal = max_abs(off) == 0.0;
  return m;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << " residual=" << c.residual << "\n";
  return os.str();
}

ValidationReport validate_model(const LindbladModel& model, const ModelTolerances& tol) {
  ValidationReport report;
  auto add = [&](std::string name, double residual, double bound) {
    report.checks.push_back({std::move(name), residual <= bound, residual});
  };

  add("hermiticity(H)", hermiticity_residual(model.hamiltonian), tol.hamiltonian_hermiticity);

  for (const auto& bath : model.baths) {
    for (size_t i = 0; i < bath.channels.size(); ++i) {
      const auto& ch = bath.channels[i];
      std::ostringstream tag;
      tag << "bath=" << bath.label << ",channel=" << i;

      const Mat defect =
          commutator(ch.op, model.hamiltonian) - Complex(model.hbar * ch.omega) * ch.op;
      add("eigenoperator(" + tag.str() + ")", max_abs(defect), tol.eigenoperator);
      add("rate_nonnegative(" + tag.str() + ")", ch.rate >= 0.0 ? 0.0 : -ch.rate, 0.0);

      // Partner channel at -omega with the adjoint operator.
      double best = std::numeric_limits<double>::infinity();
      for (const auto& other : bath.channels) {
        if (std::abs(other.omega + ch.omega) > 1e-12 * std::max(1.0, std::abs(ch.omega))) continue;
        best = std::min(best, max_abs(other.op - ch.op.adjoint()));
      }
      add("adjoint_pairing(" + tag.str() + ")",
          std::isfinite(best) ? best : 1.0, tol.adjoint_pairing);

      // Detailed balance, stated once per pair with omega > 0:
      // gamma(+omega)/gamma(-omega) = exp[beta(hbar*omega - mu)].
      if (ch.omega > 0.0) {
        for (const auto& other : bath.channels) {
          if (std::abs(other.omega + ch.omega) > 1e-12 * std::abs(ch.omega)) continue;
          if (max_abs(other.op - ch.op.adjoint()) > 1e-8) continue;
          const double expected = std::exp(bath.beta * (model.hbar * ch.omega - bath.mu));
          double resid;
          if (other.rate == 0.0 && ch.rate == 0.0) {
            resid = 0.0;  // 0/0 pair: vacuously balanced
          } else if (other.rate == 0.0) {
            resid = std::numeric_limits<double>::infinity();
          } else {
            resid = std::abs(ch.rate / other.rate - expected) / expected;
          }
          add("detailed_balance(" + tag.str() + ")", resid, tol.detailed_balance);
        }
      }
    }
  }
  return report;
}

}  // namespace qtherm
