#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qtherm/engine.hpp"
#include "qtherm/evolution.hpp"
#include "qtherm/model.hpp"
#include "qtherm/thermo.hpp"

namespace qtherm {

/// Complex numbers in text: "re+imi" / "re-imi" (e.g. "1.5-0.25i"); a bare
/// real is accepted on input. Formatting uses %.17g so values round-trip.
std::string format_complex(Complex z);
Complex parse_complex(const std::string& text);

std::string format_double(double x);  // %.17g

/// Plain-text key-value model format, one statement per line:
///   hbar <real>
///   dim <int>
///   H <row> <col> <complex>          (unlisted entries are zero)
///   bath <label> <beta> <mu>         (starts a bath)
///   channel <omega> <gamma>          (starts a channel in the current bath)
///   L <row> <col> <complex>          (entry of the current channel operator)
/// Blank lines and lines starting with '#' are ignored.
std::string model_to_text(const LindbladModel& model);
LindbladModel model_from_text(const std::string& text);

void save_model(const std::string& path, const LindbladModel& model);
LindbladModel load_model(const std::string& path);

/// CSV with '#'-prefixed metadata lines, a one-line header, and %.17g
/// numeric formatting so identical inputs give byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  static std::string cell(double x) { return format_double(x); }
  static std::string cell(long x);
  static std::string cell(int x) { return cell(static_cast<long>(x)); }
  static std::string cell(bool b) { return b ? "1" : "0"; }

 private:
  std::ostream& os_;
};

/// Column 1 time, then flattened row-major rho entries, re/im interleaved.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// t, J_H, J_C, S_dot, sigma_dot, ratio, a_cl, a_qm, flags. Currents for
/// unattached baths are written as 0; flags is "-" or tokens
/// "div_ratio"/"div_entropy" joined by '|'.
void write_thermo_csv(std::ostream& os, const std::vector<ThermoSample>& samples);

/// cycle_index, W, Q_H, Q_C, tau, eta, eta_car, P, Abar_cl, Abar_qm, converged.
void write_cycle_csv(std::ostream& os, const std::vector<CycleRecord>& records);

/// c_l1, c_x, a_cl, a_qm.
void write_coherence_csv(std::ostream& os, const std::vector<CoherenceReport>& reports);

}  // namespace qtherm
