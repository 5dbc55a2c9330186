#include "qtherm/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qtherm {

std::string format_double(double x) {
  char buf[40];
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  // Shortest representation that round-trips exactly.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  s += (z.imag() < 0.0 || (z.imag() == 0.0 && std::signbit(z.imag()))) ? "-" : "+";
  s += format_double(std::abs(z.imag()));
  s += 'i';
  return s;
}

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_complex: empty token");
  if (text.back() != 'i') {
    size_t used = 0;
    const double re = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("parse_complex: bad token " + text);
    return Complex(re, 0.0);
  }
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the sign that separates re and im (skip a leading sign and any
  // exponent signs).
  size_t split = std::string::npos;
  for (size_t i = 1; i < body.size(); ++i) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
  }
  if (split == std::string::npos)
    throw std::invalid_argument("parse_complex: bad token " + text);
  const double re = std::stod(body.substr(0, split));
  const double im = std::stod(body.substr(split));  // keeps the sign
  return Complex(re, im);
}

namespace {

void write_matrix_entries(std::ostringstream& os, const char* key, const Mat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex(0.0))
        os << key << ' ' << i << ' ' << j << ' ' << format_complex(m(i, j)) << '\n';
}

}  // namespace

std::string model_to_text(const LindbladModel& model) {
  std::ostringstream os;
  os << "# qtherm lindblad model\n";
  os << "hbar " << format_double(model.hbar) << '\n';
  os << "dim " << model.dim() << '\n';
  write_matrix_entries(os, "H", model.hamiltonian);
  for (const auto& bath : model.baths) {
    os << "bath " << bath.label << ' ' << format_double(bath.beta) << ' '
       << format_double(bath.mu) << '\n';
    for (const auto& ch : bath.channels) {
      os << "channel " << format_double(ch.omega) << ' ' << format_double(ch.rate) << '\n';
      write_matrix_entries(os, "L", ch.op);
    }
  }
  return os.str();
}

LindbladModel model_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;

  double hbar = 1.0;
  int dim = -1;
  Mat h;
  struct PendingChannel {
    double omega = 0.0, rate = 0.0;
    Mat op;
  };
  struct PendingBath {
    std::string label;
    double beta = 0.0, mu = 0.0;
    std::vector<PendingChannel> channels;
  };
  std::vector<PendingBath> baths;

  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    std::ostringstream os;
    os << "model_from_text: line " << line_no << ": " << msg;
    throw std::invalid_argument(os.str());
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;

    if (key == "hbar") {
      if (!(ls >> hbar)) fail("expected: hbar <real>");
    } else if (key == "dim") {
      if (!(ls >> dim) || dim <= 0) fail("expected: dim <positive int>");
      h = Mat::Zero(dim, dim);
    } else if (key == "H") {
      int i, j;
      std::string z;
      if (dim <= 0) fail("dim must come before H entries");
      if (!(ls >> i >> j >> z) || i < 0 || j < 0 || i >= dim || j >= dim)
        fail("expected: H <row> <col> <complex>");
      h(i, j) = parse_complex(z);
    } else if (key == "bath") {
      PendingBath b;
      if (!(ls >> b.label >> b.beta >> b.mu)) fail("expected: bath <label> <beta> <mu>");
      baths.push_back(std::move(b));
    } else if (key == "channel") {
      if (baths.empty()) fail("channel before any bath");
      if (dim <= 0) fail("dim must come before channels");
      PendingChannel c;
      if (!(ls >> c.omega >> c.rate)) fail("expected: channel <omega> <gamma>");
      c.op = Mat::Zero(dim, dim);
      baths.back().channels.push_back(std::move(c));
    } else if (key == "L") {
      if (baths.empty() || baths.back().channels.empty()) fail("L entry before any channel");
      int i, j;
      std::string z;
      if (!(ls >> i >> j >> z) || i < 0 || j < 0 || i >= dim || j >= dim)
        fail("expected: L <row> <col> <complex>");
      baths.back().channels.back().op(i, j) = parse_complex(z);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (dim <= 0) throw std::invalid_argument("model_from_text: missing dim");

  std::vector<BathSpec> specs;
  for (auto& b : baths) {
    BathSpec spec;
    spec.label = b.label;
    spec.beta = b.beta;
    spec.mu = b.mu;
    for (auto& c : b.channels)
      spec.channels.push_back(JumpChannel::make(c.omega, c.rate, std::move(c.op)));
    specs.push_back(std::move(spec));
  }
  return LindbladModel::make(hbar, std::move(h), std::move(specs));
}

void save_model(const std::string& path, const LindbladModel& model) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_model: cannot open " + path);
  os << model_to_text(model);
}

LindbladModel load_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_model: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return model_from_text(buf.str());
}

void CsvWriter::comment(const std::string& line) { os_ << "# " << line << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << '\n';
}

std::string CsvWriter::cell(long x) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%ld", x);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  CsvWriter csv(os);
  std::vector<std::string> cols = {"t"};
  if (!traj.states.empty()) {
    const int n = static_cast<int>(traj.states.front().rows());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cols.push_back("re_" + std::to_string(i) + "_" + std::to_string(j));
        cols.push_back("im_" + std::to_string(i) + "_" + std::to_string(j));
      }
  }
  csv.header(cols);
  for (size_t k = 0; k < traj.states.size(); ++k) {
    std::vector<std::string> cells = {CsvWriter::cell(traj.times[k])};
    const Mat& m = traj.states[k];
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        cells.push_back(CsvWriter::cell(m(i, j).real()));
        cells.push_back(CsvWriter::cell(m(i, j).imag()));
      }
    csv.row(cells);
  }
}

namespace {

std::string flag_tokens(const ThermoSample& s) {
  std::string out;
  if (s.ratio_divergent) out += "div_ratio";
  if (s.entropy_divergent) {
    if (!out.empty()) out += '|';
    out += "div_entropy";
  }
  return out.empty() ? "-" : out;
}

double bath_current(const ThermoSample& s, const std::string& label) {
  for (const auto& [name, j] : s.j_per_bath)
    if (name == label) return j;
  return 0.0;
}

}  // namespace

void write_thermo_csv(std::ostream& os, const std::vector<ThermoSample>& samples) {
  CsvWriter csv(os);
  csv.header({"t", "J_H", "J_C", "S_dot", "sigma_dot", "ratio", "a_cl", "a_qm", "flags"});
  for (const auto& s : samples) {
    csv.row({CsvWriter::cell(s.t), CsvWriter::cell(bath_current(s, "H")),
             CsvWriter::cell(bath_current(s, "C")), CsvWriter::cell(s.entropy_rate),
             CsvWriter::cell(s.sigma_dot), CsvWriter::cell(s.ratio), CsvWriter::cell(s.a_cl),
             CsvWriter::cell(s.a_qm), flag_tokens(s)});
  }
}

void write_coherence_csv(std::ostream& os, const std::vector<CoherenceReport>& reports) {
  CsvWriter csv(os);
  csv.header({"c_l1", "c_x", "a_cl", "a_qm"});
  for (const auto& r : reports)
    csv.row({CsvWriter::cell(r.c_l1), CsvWriter::cell(r.c_x), CsvWriter::cell(r.a_cl),
             CsvWriter::cell(r.a_qm)});
}

void write_cycle_csv(std::ostream& os, const std::vector<CycleRecord>& records) {
  CsvWriter csv(os);
  csv.header({"cycle_index", "W", "Q_H", "Q_C", "tau", "eta", "eta_car", "P", "Abar_cl",
              "Abar_qm", "converged"});
  for (const auto& r : records) {
    csv.row({CsvWriter::cell(r.cycle_index), CsvWriter::cell(r.w), CsvWriter::cell(r.q_h),
             CsvWriter::cell(r.q_c), CsvWriter::cell(r.tau), CsvWriter::cell(r.eta),
             CsvWriter::cell(r.eta_car), CsvWriter::cell(r.p), CsvWriter::cell(r.abar_cl),
             CsvWriter::cell(r.abar_qm), CsvWriter::cell(r.converged)});
  }
}

}  // namespace qtherm
