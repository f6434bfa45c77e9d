#include "qspe/montecarlo.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qspe/mesh.hpp"

namespace qspe {

namespace {

constexpr std::size_t kMaxResamples = 64;

bool is_qubit(Encoding e) { return e != Encoding::kQudit; }

}  // namespace

std::string to_string(Encoding e) {
  switch (e) {
    case Encoding::kQudit:
      return "qudit";
    case Encoding::kQubitProgrammable:
      return "qubit-programmable";
    case Encoding::kQubitDedicated:
      return "qubit-dedicated";
  }
  return "?";
}

Encoding parse_encoding(const std::string& s) {
  if (s == "qudit") return Encoding::kQudit;
  if (s == "qubit-programmable" || s == "qubit_programmable") {
    return Encoding::kQubitProgrammable;
  }
  if (s == "qubit-dedicated" || s == "qubit_dedicated") return Encoding::kQubitDedicated;
  throw std::invalid_argument("unknown encoding '" + s + "'");
}

QuditEnergy qsp_energy_qudit(std::size_t dim, const EomModel& model,
                             const RngStream& stream, std::size_t samples,
                             unsigned threads) {
  if (dim < 2) throw std::invalid_argument("qsp_energy_qudit: dim must be >= 2");
  if (samples == 0) throw std::invalid_argument("qsp_energy_qudit: samples must be >= 1");
  model.validate();

  std::vector<double> energies(samples);
  std::vector<std::size_t> elements(samples);
  std::vector<std::size_t> failures(samples, 0);
  parallel_for(samples, threads, [&](std::size_t i) {
    const RngStream trial = stream.substream(i);
    for (std::size_t attempt = 0;; ++attempt) {
      const RngStream draw = attempt == 0 ? trial : trial.substream(attempt);
      try {
        const auto program = clements_decompose(haar_unitary(dim, draw));
        const auto report = mesh_energy(model, program);
        energies[i] = report.total;
        elements[i] = report.element_count;
        return;
      } catch (const ValidationError&) {
        if (attempt + 1 >= kMaxResamples) throw;
        ++failures[i];
      }
    }
  });

  QuditEnergy out;
  out.elements = elements.front();
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    sum += energies[i];
    out.failures += failures[i];
    if (elements[i] != out.elements) {
      throw std::logic_error("qsp_energy_qudit: element count varies between trials");
    }
  }
  out.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double ss = 0.0;
    for (double e : energies) ss += (e - out.mean) * (e - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(samples - 1));
  }
  return out;
}

void SweepSpec::validate() const {
  if (samples == 0) throw std::invalid_argument("sweep: samples must be >= 1");
  if (points.empty()) throw std::invalid_argument("sweep: point list is empty");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] <= points[i - 1]) {
      throw std::invalid_argument("sweep: points must be strictly increasing");
    }
  }
  model.validate();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.points.size());
  for (int x : spec.points) {
    SweepRow row;
    row.encoding = spec.encoding;
    row.x = x;
    row.samples = spec.samples;
    row.seed = spec.seed;
    const RngStream stream{spec.seed, static_cast<std::uint64_t>(x)};
    try {
      if (spec.encoding == Encoding::kQudit) {
        if (x < 2) throw std::invalid_argument("dimension must be >= 2");
        const auto r = qsp_energy_qudit(static_cast<std::size_t>(x), spec.model,
                                        stream, spec.samples, spec.threads);
        row.mean_energy = r.mean;
        row.std_energy = r.std;
        row.failures = r.failures;
      } else {
        auto options = spec.qubit;
        options.threads = spec.threads;
        const auto mode = spec.encoding == Encoding::kQubitProgrammable
                              ? QubitHardware::kProgrammable
                              : QubitHardware::kDedicated;
        const auto r = qsp_energy_qubits(x, mode, spec.model, stream,
                                         spec.samples, options);
        row.mean_energy = r.mean;
        row.std_energy = r.std;
        row.cnots = r.cnots;
        row.sqos = r.sqos;
        row.attempts_log10 = expected_attempts_log10(r.cnots);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CountRow> count_sweep(const std::vector<int>& n_list) {
  std::vector<CountRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    rows.push_back({n, cnot_count_bergholm(n), cnot_count_plesch(n),
                    cnot_count_modified(n)});
  }
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    const bool qubit = is_qubit(r.encoding);
    std::string mode;
    if (r.encoding == Encoding::kQubitProgrammable) mode = "programmable";
    if (r.encoding == Encoding::kQubitDedicated) mode = "dedicated";
    os << r.x << ',' << (qubit ? "qubit" : "qudit") << ',' << mode << ',';
    if (r.error.empty()) {
      os << format_double(r.mean_energy) << ',' << format_double(r.std_energy);
    } else {
      os << ',';
    }
    os << ',' << r.samples << ',' << r.seed << ',';
    if (r.cnots) os << format_double(*r.cnots);
    os << ',';
    if (r.sqos) os << *r.sqos;
    os << ',';
    if (r.attempts_log10) os << format_double(*r.attempts_log10);
    os << '\n';
  }
}

void write_counts_csv(std::ostream& os, const std::vector<CountRow>& rows) {
  os << "n,bergholm,plesch,modified\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.bergholm) << ',' << format_double(r.plesch)
       << ',' << format_double(r.modified) << '\n';
  }
}

}  // namespace qspe
