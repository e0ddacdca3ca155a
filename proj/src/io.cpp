#include "ssq/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ssq/common.hpp"

namespace ssq {
namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);  // binary: identical bytes everywhere
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  return out;
}

void write_sidecar(const std::filesystem::path& csv_path, nlohmann::json meta) {
  meta["version"] = kVersion;
  std::filesystem::path p = csv_path;
  p.replace_extension(".json");
  std::ofstream out = open_out(p);
  out << meta.dump(2) << "\n";
}

// RFC-4180 quoting: wrap in quotes, double any embedded quote.
std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_ensemble_csv(const std::filesystem::path& csv_path, const PathEnsemble& ensemble) {
  std::ofstream out = open_out(csv_path);
  out << "path_id,t,value\n";
  for (std::size_t p = 0; p < ensemble.n_paths; ++p) {
    for (std::size_t i = 0; i < ensemble.grid.n_times(); ++i) {
      out << p << ',' << format_double(ensemble.grid.times[i]) << ','
          << format_double(ensemble.at(p, i)) << '\n';
    }
  }
  write_sidecar(csv_path, {{"spec", spec_to_json(ensemble.spec)},
                           {"grid", grid_to_json(ensemble.grid)},
                           {"seed", ensemble.seed},
                           {"replication", ensemble.replication},
                           {"n_paths", ensemble.n_paths},
                           {"method", sim_method_name(ensemble.method)}});
}

void write_fields_csv(const std::filesystem::path& csv_path,
                      const std::vector<QuantileField>& fields, const ProcessSpec& spec,
                      std::uint64_t seed) {
  if (fields.empty()) throw std::invalid_argument("no quantile fields to write");
  std::ofstream out = open_out(csv_path);
  out << "replication,t,alpha,w\n";
  for (const QuantileField& f : fields) {
    for (std::size_t i = 0; i < f.grid.n_times(); ++i) {
      for (std::size_t j = 0; j < f.grid.n_alphas(); ++j) {
        out << f.replication << ',' << format_double(f.grid.times[i]) << ','
            << format_double(f.grid.alphas[j]) << ',' << format_double(f.at(i, j)) << '\n';
      }
    }
  }
  write_sidecar(csv_path, {{"spec", spec_to_json(spec)},
                           {"grid", grid_to_json(fields.front().grid)},
                           {"seed", seed},
                           {"n", fields.front().n},
                           {"replications", fields.size()}});
}

void write_cov_table_csv(const std::filesystem::path& csv_path, const LimitCovariance& table,
                         std::uint64_t seed) {
  std::ofstream out = open_out(csv_path);
  out << "s,beta,t,alpha,value,method\n";
  for (const CovEntry& e : table.entries) {
    out << format_double(e.s) << ',' << format_double(e.beta) << ',' << format_double(e.t)
        << ',' << format_double(e.alpha) << ',' << format_double(e.value) << ','
        << cov_method_name(e.method) << '\n';
  }
  write_sidecar(csv_path, {{"spec", spec_to_json(table.spec)}, {"seed", seed}});
}

void write_report(const std::filesystem::path& directory, const VerificationReport& report) {
  std::filesystem::create_directories(directory);
  {
    std::ofstream out = open_out(directory / "report.json");
    out << report.to_json().dump(2) << "\n";
  }
  {
    std::ofstream out = open_out(directory / "estimates.csv");
    out << "coords,value,se\n";
    for (const Estimate& e : report.estimates) {
      out << csv_quote(e.coords.dump()) << ',' << format_double(e.value) << ','
          << format_double(e.se) << '\n';
    }
  }
  {
    std::ofstream out = open_out(directory / "tests.csv");
    out << "name,statistic,p\n";
    for (const TestStat& t : report.tests) {
      out << csv_quote(t.name) << ',' << format_double(t.statistic) << ','
          << format_double(t.p) << '\n';
    }
  }
  {
    std::ofstream out = open_out(directory / "verdicts.csv");
    out << "check,pass\n";
    for (const Verdict& v : report.verdicts) {
      out << csv_quote(v.check) << ',' << (v.pass ? 1 : 0) << '\n';
    }
  }
}

}  // namespace ssq
