#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helm/study.hpp"

namespace helm {

const char* const kCsvHeader =
    "k,m,h,dof,rel_h1_fem,rel_l2_fem,rel_energy_fem,rel_grad_ppr,rel_grad_rppr,rel_grad_ppr_interp,rel_grad_rfem,"
    "eta,effectivity,order_fem,order_ppr,status";

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::optional<double> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad numeric cell '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_csv(const std::vector<ConvergenceRecord>& records, bool with_grad_diff) {
  std::ostringstream out;
  out << kCsvHeader << (with_grad_diff ? ",rel_grad_diff" : "") << '\n';
  for (const ConvergenceRecord& r : records) {
    std::string status = r.status;
    for (char& c : status) {
      if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    out << num(r.k) << ',' << r.m << ',' << num(r.h) << ',' << r.dof << ',' << cell(r.rel_h1_fem) << ','
        << cell(r.rel_l2_fem) << ',' << cell(r.rel_energy_fem) << ',' << cell(r.rel_grad_ppr) << ','
        << cell(r.rel_grad_rppr) << ',' << cell(r.rel_grad_ppr_interp) << ',' << cell(r.rel_grad_rfem) << ','
        << cell(r.eta) << ',' << cell(r.effectivity) << ',' << cell(r.order_fem) << ',' << cell(r.order_ppr) << ','
        << status;
    if (with_grad_diff) out << ',' << cell(r.rel_grad_diff);
    out << '\n';
  }
  return out.str();
}

std::vector<ConvergenceRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  bool with_grad_diff = false;
  if (line == std::string(kCsvHeader) + ",rel_grad_diff") {
    with_grad_diff = true;
  } else if (line != kCsvHeader) {
    throw std::invalid_argument("unexpected CSV header");
  }
  const std::size_t cols = with_grad_diff ? 17 : 16;
  std::vector<ConvergenceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != cols) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " cells");
    ConvergenceRecord r;
    r.k = std::stod(f[0]);
    r.m = std::stoi(f[1]);
    r.h = std::stod(f[2]);
    r.dof = static_cast<std::size_t>(std::stoull(f[3]));
    r.rel_h1_fem = opt(f[4]);
    r.rel_l2_fem = opt(f[5]);
    r.rel_energy_fem = opt(f[6]);
    r.rel_grad_ppr = opt(f[7]);
    r.rel_grad_rppr = opt(f[8]);
    r.rel_grad_ppr_interp = opt(f[9]);
    r.rel_grad_rfem = opt(f[10]);
    r.eta = opt(f[11]);
    r.effectivity = opt(f[12]);
    r.order_fem = opt(f[13]);
    r.order_ppr = opt(f[14]);
    r.status = f[15];
    if (with_grad_diff) r.rel_grad_diff = opt(f[16]);
    out.push_back(std::move(r));
  }
  return out;
}

void write_csv_atomic(const std::string& path, const std::vector<ConvergenceRecord>& records, bool with_grad_diff) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << format_csv(records, with_grad_diff);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ConvergenceRecord> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace helm
