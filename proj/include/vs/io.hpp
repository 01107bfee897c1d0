#ifndef VS_IO_HPP
#define VS_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vs/contour.hpp"
#include "vs/gas.hpp"

namespace vs {

using json = nlohmann::json;

// 64-bit FNV-1a over the canonical (dumped) config JSON.
inline std::string config_hash(const json& config) {
  std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("IoFailure", "cannot open for writing: " + path);
  f << body;
  if (!f) throw io_error("IoFailure", "write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("IoFailure", "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// contour image CSV
// ---------------------------------------------------------------------------

inline std::string image_csv(const ContourImage& img, const std::string& hash) {
  std::string out;
  out += "# config_hash=" + hash + "\n";
  out += "re_lambda,im_lambda,log10_mod_D,arg_unwrapped,generation\n";
  for (size_t i = 0; i < img.pts.size(); ++i) {
    const ImagePoint& p = img.pts[i];
    out += fmt_double(p.lam.real()) + "," + fmt_double(p.lam.imag()) + "," +
           fmt_double(p.D.is_zero ? -300.0 : p.D.log10_mod) + "," +
           fmt_double(img.arg_unwrapped[i]) + "," + std::to_string(p.generation) + "\n";
  }
  return out;
}

inline ContourImage parse_image_csv(const std::string& text) {
  ContourImage img;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.find("re_lambda") == std::string::npos)
        throw io_error("ParseError", "missing CSV header row");
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw io_error("ParseError", "expected 5 CSV columns");
    ImagePoint p;
    try {
      p.lam = cplx(std::stod(cells[0]), std::stod(cells[1]));
      p.D.log10_mod = std::stod(cells[2]);
      p.D.arg = wrap_angle(std::stod(cells[3]));
      p.generation = std::stoi(cells[4]);
    } catch (const std::exception&) {
      throw io_error("ParseError", "malformed CSV number");
    }
    p.t = static_cast<double>(row++);
    img.pts.push_back(p);
    img.arg_unwrapped.push_back(std::stod(cells[3]));
  }
  if (img.pts.empty()) throw io_error("ParseError", "empty CSV image");
  return img;
}

// ---------------------------------------------------------------------------
// profile JSON
// ---------------------------------------------------------------------------

inline json profile_json(const ShockProfile& p) {
  json j;
  j["frame"] = p.frame == Frame::Eulerian ? "eulerian" : "lagrangian";
  j["gamma"] = p.model.gamma;
  j["a"] = p.model.a;
  j["u_plus"] = p.u_plus;
  j["M_plus"] = p.M_plus;
  j["M_minus"] = p.M_minus;
  j["delta_plus"] = p.delta_plus;
  j["delta_minus"] = p.delta_minus;
  j["grid"] = p.grid;
  std::vector<double> rho(p.val.size()), u(p.val.size());
  for (size_t i = 0; i < p.val.size(); ++i) {
    rho[i] = 1.0 / p.val[i];
    u[i] = p.val[i];
  }
  j["rho"] = rho;
  j["u"] = u;
  j["y"] = p.frame == Frame::Eulerian ? p.ymap : p.grid;
  return j;
}

// ---------------------------------------------------------------------------
// SVG polyline rendering with an origin "+" marker
// ---------------------------------------------------------------------------

inline std::string image_svg(const ContourImage& img, bool log_radial,
                             const std::string& hash) {
  std::vector<double> xs, ys;
  xs.reserve(img.pts.size());
  ys.reserve(img.pts.size());
  for (const auto& p : img.pts) {
    double mod = std::pow(10.0, p.D.log10_mod);
    double r = log_radial ? std::log10(1.0 + mod / std::pow(10.0, img.log10_min)) : mod;
    xs.push_back(r * std::cos(p.D.arg));
    ys.push_back(r * std::sin(p.D.arg));
  }
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;  // always include the origin
  for (size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  double pad = 0.08 * span;
  xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;
  double W = 640.0, H = 640.0;
  double sx = W / (xmax - xmin), sy = H / (ymax - ymin);
  double s = std::min(sx, sy);
  auto px = [&](double x) { return (x - xmin) * s; };
  auto py = [&](double y) { return H - (y - ymin) * s; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  svg += "<!-- config_hash=" + hash + " -->\n";
  svg += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.2\" points=\"";
  for (size_t i = 0; i < xs.size(); ++i) {
    svg += fmt_double(px(xs[i])) + "," + fmt_double(py(ys[i]));
    if (i + 1 < xs.size()) svg += " ";
  }
  svg += "\"/>\n";
  double ox = px(0.0), oy = py(0.0), m = 8.0;
  svg += "<path stroke=\"crimson\" stroke-width=\"1.5\" d=\"M " + fmt_double(ox - m) + " " +
         fmt_double(oy) + " H " + fmt_double(ox + m) + " M " + fmt_double(ox) + " " +
         fmt_double(oy - m) + " V " + fmt_double(oy + m) + "\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace vs

#endif  // VS_IO_HPP
