#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "momentbc/channel.hpp"

namespace momentbc {

/// 17 significant digits; reads back to the same double.
std::string format_double(double v);

/// Named columns of equal length.
struct CsvTable
{
  std::vector<std::string> header;
  Eigen::MatrixXd data;  ///< rows x columns

  /// Throws std::out_of_range when the column is missing.
  int column(const std::string& name) const;
  Eigen::VectorXd col(const std::string& name) const { return data.col(column(name)); }
};

void write_csv(std::ostream& os, const CsvTable& t);
/// Throws std::runtime_error with the line number on malformed input.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);
void write_csv_file(const std::string& path, const CsvTable& t);

/// Columns y, rho, v_y, theta, sigma_yy, q_y, then the raw moments when present.
CsvTable channel_table(const ChannelSolution& s);

/// Inverse of channel_table for the field columns (moments are kept if present).
ChannelSolution channel_from_table(const CsvTable& t);

/// Matrix without header.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);

/// y, theta_a, theta_b, e_theta, sigma_yy_a, sigma_yy_b, e_sigma.
/// Throws std::invalid_argument unless the y columns agree.
CsvTable compare_tables(const CsvTable& a, const CsvTable& b);

/// gnuplot script drawing theta, sigma_yy and both errors from the
/// compare output.
std::string gnuplot_script(const std::string& compare_csv, const std::string& label_a, const std::string& label_b,
                           const std::string& png);

}  // namespace momentbc
