#include "llt/report_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "llt/error.hpp"

namespace llt {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

nlohmann::json pmf_to_json(const LatticePmf &p) {
  return nlohmann::json{{"offset", p.offset()},
                        {"weights", std::vector<double>(p.weights().begin(), p.weights().end())},
                        {"trimmed_mass", p.trimmed_mass()}};
}

LatticePmf pmf_from_json(const nlohmann::json &j, bool unnormalized) {
  try {
    PmfOptions options;
    options.unnormalized = unnormalized;
    options.trimmed_mass = j.value("trimmed_mass", 0.0);
    return make_pmf(j.at("offset").get<std::int64_t>(), j.at("weights").get<std::vector<double>>(),
                    options);
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(std::string("pmf json: ") + e.what());
  }
}

nlohmann::json report_to_json(const LltReport &r) {
  nlohmann::json mod = nlohmann::json::object();
  for (const auto &[d, dev] : r.mod_dev) {
    mod[std::to_string(d)] = dev;
  }
  return nlohmann::json{{"n", r.n},
                        {"a", r.a},
                        {"b", r.b},
                        {"eps", r.eps},
                        {"v", r.v},
                        {"window_diff", r.window_diff},
                        {"shift_diff", r.shift_diff},
                        {"llt_err", r.llt_err},
                        {"scaled_window_diff", r.scaled_window_diff},
                        {"scaled_llt_err", r.scaled_llt_err},
                        {"mod_dev", mod}};
}

LltReport report_from_json(const nlohmann::json &j) {
  LltReport r;
  r.n = j.at("n").get<std::int64_t>();
  r.a = j.at("a").get<double>();
  r.b = j.at("b").get<double>();
  r.eps = j.at("eps").get<double>();
  r.v = j.at("v").get<std::int64_t>();
  r.window_diff = j.at("window_diff").get<double>();
  r.shift_diff = j.at("shift_diff").get<double>();
  r.llt_err = j.at("llt_err").get<double>();
  r.scaled_window_diff = j.at("scaled_window_diff").get<double>();
  r.scaled_llt_err = j.at("scaled_llt_err").get<double>();
  for (const auto &[key, value] : j.at("mod_dev").items()) {
    r.mod_dev[std::stoll(key)] = value.get<double>();
  }
  return r;
}

nlohmann::json decomposition_to_json(const ProofDecomposition &d) {
  return nlohmann::json{{"m", d.m},
                        {"v", d.v},
                        {"lhs", d.lhs},
                        {"term_I", d.term_I},
                        {"term_II", d.term_II},
                        {"identity_residual", d.identity_residual},
                        {"gaussian_I_approx", d.gaussian_I_approx}};
}

std::string sweep_csv_header(const std::set<std::int64_t> &moduli) {
  std::string h = "n,a,b,eps,v,window_diff,shift_diff,llt_err,b_window_diff,b_llt_err";
  for (const auto d : moduli) {
    h += ",mod_dev_" + std::to_string(d);
  }
  return h;
}

std::string sweep_csv_row(const LltReport &r, const std::set<std::int64_t> &moduli) {
  std::string row = std::to_string(r.n);
  for (const double x : {r.a, r.b, r.eps}) {
    row += ',' + format_double(x);
  }
  row += ',' + std::to_string(r.v);
  for (const double x :
       {r.window_diff, r.shift_diff, r.llt_err, r.scaled_window_diff, r.scaled_llt_err}) {
    row += ',' + format_double(x);
  }
  for (const auto d : moduli) {
    const auto it = r.mod_dev.find(d);
    row += ',';
    if (it != r.mod_dev.end()) {
      row += format_double(it->second);
    }
  }
  return row;
}

void write_sweep_csv(std::ostream &os, const std::vector<LltReport> &rows,
                     const std::set<std::int64_t> &moduli) {
  os << sweep_csv_header(moduli) << '\n';
  for (const auto &r : rows) {
    os << sweep_csv_row(r, moduli) << '\n';
  }
}

std::string render_sweep_svg(const std::vector<LltReport> &rows) {
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double left = 70.0;
  constexpr double right = 150.0;
  constexpr double top = 30.0;
  constexpr double bottom = 50.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_hi = 1.0;
  if (!rows.empty()) {
    x_lo = std::log10(static_cast<double>(std::max<std::int64_t>(rows.front().n, 1)));
    x_hi = std::log10(static_cast<double>(std::max<std::int64_t>(rows.back().n, 1)));
    y_hi = 0.0;
    for (const auto &r : rows) {
      y_hi = std::max({y_hi, r.scaled_window_diff, r.scaled_llt_err});
    }
    if (y_hi <= 0.0) {
      y_hi = 1.0;
    }
    y_hi *= 1.05;
  }
  if (x_hi <= x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  const auto px = [&](std::int64_t n) {
    const double lx = std::log10(static_cast<double>(std::max<std::int64_t>(n, 1)));
    return left + (lx - x_lo) / (x_hi - x_lo) * plot_w;
  };
  const auto py = [&](double y) { return top + plot_h - y / y_hi * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
     << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << top + plot_h << "\" stroke=\"black\"/>\n";
  for (const auto &r : rows) {
    os << "<text x=\"" << px(r.n) << "\" y=\"" << top + plot_h + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << r.n << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = y_hi * k / 4.0;
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(y) + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(std::round(y * 1e4) / 1e4)
       << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
     << "\" font-size=\"12\" text-anchor=\"middle\">n (log scale)</text>\n";

  struct Series {
    const char *label;
    const char *color;
    double LltReport::*field;
  };
  const std::array<Series, 2> series{{{"b*window_diff", "#1f77b4", &LltReport::scaled_window_diff},
                                      {"b*llt_err", "#d62728", &LltReport::scaled_llt_err}}};
  for (std::size_t s = 0; s < series.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << series[s].color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << (i ? " " : "") << px(rows[i].n) << ',' << py(rows[i].*series[s].field);
    }
    os << "\"/>\n";
    const double ly = top + 20.0 * static_cast<double>(s + 1);
    os << "<line x1=\"" << left + plot_w + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 30
       << "\" y2=\"" << ly << "\" stroke=\"" << series[s].color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + plot_w + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
       << series[s].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace llt
