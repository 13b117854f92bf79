#include "momentbc/field_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace momentbc {

std::string format_double(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int CsvTable::column(const std::string& name) const
{
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  throw std::out_of_range("CSV has no column '" + name + "'");
}

void write_csv(std::ostream& os, const CsvTable& t)
{
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (Eigen::Index r = 0; r < t.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.data.cols(); ++c) os << (c ? "," : "") << format_double(t.data(r, c));
    os << '\n';
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, int line)
{
  double v = 0.0;
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw std::runtime_error("line " + std::to_string(line) + ": empty cell");
  const char* first = s.data() + b;
  const char* last = s.data() + e + 1;
  // from_chars rejects these spellings
  const std::string word(first, last);
  if (word == "nan" || word == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (word == "inf") return std::numeric_limits<double>::infinity();
  if (word == "-inf") return -std::numeric_limits<double>::infinity();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::runtime_error("line " + std::to_string(line) + ": '" + word + "' is not a number");
  return v;
}

}  // namespace

CsvTable read_csv(std::istream& is)
{
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_line(line);
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != t.header.size())
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                               " cells, found " + std::to_string(cells.size()));
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c, lineno));
    rows.push_back(std::move(row));
  }
  t.data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(t.header.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) t.data(r, c) = rows[r][c];
  return t;
}

CsvTable read_csv_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

void write_csv_file(const std::string& path, const CsvTable& t)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, t);
}

CsvTable channel_table(const ChannelSolution& s)
{
  CsvTable t;
  t.header = {"y", "rho", "v_y", "theta", "sigma_yy", "q_y"};
  const Eigen::Index n = s.y.size();
  const bool raw = s.alpha.rows() == n && s.alpha.cols() > 0;
  if (raw) t.header.insert(t.header.end(), s.moment_keys.begin(), s.moment_keys.end());
  t.data.resize(n, static_cast<Eigen::Index>(t.header.size()));
  t.data.col(0) = s.y;
  t.data.col(1) = s.fields.rho;
  t.data.col(2) = s.fields.v_y;
  t.data.col(3) = s.fields.theta;
  t.data.col(4) = s.fields.sigma_yy;
  t.data.col(5) = s.fields.q_y;
  if (raw) t.data.rightCols(s.alpha.cols()) = s.alpha;
  return t;
}

ChannelSolution channel_from_table(const CsvTable& t)
{
  ChannelSolution s;
  s.y = t.col("y");
  s.fields.rho = t.col("rho");
  s.fields.v_y = t.col("v_y");
  s.fields.theta = t.col("theta");
  s.fields.sigma_yy = t.col("sigma_yy");
  s.fields.q_y = t.col("q_y");
  const int first = t.column("q_y") + 1;
  const int nm = static_cast<int>(t.header.size()) - first;
  if (nm > 0) {
    s.moment_keys.assign(t.header.begin() + first, t.header.end());
    s.alpha = t.data.rightCols(nm);
  }
  return s;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m)
{
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << format_double(m(r, c));
    os << '\n';
  }
}

CsvTable compare_tables(const CsvTable& a, const CsvTable& b)
{
  const Eigen::VectorXd ya = a.col("y"), yb = b.col("y");
  if (ya.size() != yb.size() || (ya - yb).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("the two CSV files are not on identical grids");
  CsvTable t;
  t.header = {"y", "theta_a", "theta_b", "e_theta", "sigma_yy_a", "sigma_yy_b", "e_sigma"};
  t.data.resize(ya.size(), 7);
  t.data.col(0) = ya;
  t.data.col(1) = a.col("theta");
  t.data.col(2) = b.col("theta");
  t.data.col(3) = (t.data.col(1) - t.data.col(2)).cwiseAbs();
  t.data.col(4) = a.col("sigma_yy");
  t.data.col(5) = b.col("sigma_yy");
  t.data.col(6) = (t.data.col(4) - t.data.col(5)).cwiseAbs();
  return t;
}

std::string gnuplot_script(const std::string& compare_csv, const std::string& label_a, const std::string& label_b,
                           const std::string& png)
{
  std::ostringstream g;
  g << "set datafile separator ','\n"
    << "set terminal pngcairo size 1200,900\n"
    << "set output '" << png << "'\n"
    << "set multiplot layout 2,2\n"
    << "set xlabel 'y'\n"
    << "set key autotitle columnhead\n"
    << "set ylabel 'theta'\n"
    << "plot '" << compare_csv << "' using 1:2 with lines title '" << label_a << "', '' using 1:3 with lines title '"
    << label_b << "'\n"
    << "set ylabel 'sigma_yy'\n"
    << "plot '" << compare_csv << "' using 1:5 with lines title '" << label_a << "', '' using 1:6 with lines title '"
    << label_b << "'\n"
    << "set ylabel 'e_theta'\n"
    << "plot '" << compare_csv << "' using 1:4 with lines notitle\n"
    << "set ylabel 'e_sigma'\n"
    << "plot '" << compare_csv << "' using 1:7 with lines notitle\n"
    << "unset multiplot\n";
  return g.str();
}

}  // namespace momentbc
