#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "spinflip/config.hpp"

namespace spinflip {

using Cell = std::variant<double, std::string>;

struct ScanTable {
  std::vector<std::string> header;  // comment lines without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Number of rows whose status column is not "ok".
  int failed_rows() const;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

void write_csv(const ScanTable& t, std::ostream& out);

/// Writes to c.output_path ("-" = stdout). The file is opened before any
/// computation so an unwritable path fails early with IoError.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path);
  ~OutputSink();
  OutputSink(const OutputSink&) = delete;
  OutputSink& operator=(const OutputSink&) = delete;

  void write(const ScanTable& t);

 private:
  std::string path_;
  std::ostream* stream_;
  bool owned_;
};

/// Columns: axis_value, T_K, H_m, z_m, sigma1, sigma2, eps_re, eps_im, i_par,
/// i_perp, gamma_free, gamma_slab, occupation, gamma_total, tau_s, status.
ScanTable run_scan(const ScanConfig& c, const std::string& command = "scan");

/// Temperature sweep of a superconducting model's conductivity, with
/// sigma1/sigma_n and sigma2 normalized to sigma_n (clean) or sigma_L.
ScanTable run_conductivity_table(const ScanConfig& c);

/// Exact lifetime against the closed forms (superconductor when sigma2 > 0,
/// normal metal otherwise), half-space only.
ScanTable run_compare(const ScanConfig& c);

/// Delta(T) from the gap equation on a temperature sweep.
ScanTable run_gap_table(const ScanConfig& c);

}  // namespace spinflip
