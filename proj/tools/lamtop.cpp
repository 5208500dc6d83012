// lamtop: batch CLI for lambda-Toeplitz and weighted-composition spectra.
//
// Subcommands:
//   classify  - per-query spectral classification plus scalar invariants
//   region    - raster of classifications over a box (ppm or svg)
//   validate  - finite-section oracle: exact identities, norms, sigma_min
//
// Exit codes: 0 success, 2 input/validation error, 3 computation error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "lamtop/matrixlab.hpp"
#include "lamtop/spectra.hpp"
#include "lamtop/symbol.hpp"
#include "lamtop/version.hpp"
#include "lamtop/wco.hpp"

using json = nlohmann::json;
using namespace lamtop;

namespace {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Problem {
  std::string kind;  // "lambda_toeplitz" or "wco"
  FourierSymbol symbol;
  std::optional<RationalRotation> rotation;
  std::optional<MoebiusAutomorphism> automorphism;
  std::vector<Complex> queries;
  std::optional<Box> box;
  std::optional<int> resolution;
  double tol = 1e-8;
};

Complex parse_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(std::string(what) + ": expected [re, im]");
  }
  Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ValidationError(std::string(what) + ": non-finite value");
  }
  return z;
}

FourierSymbol parse_symbol(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw ValidationError("symbol: expected {\"coeffs\": [[n, re, im], ...]}");
  }
  std::map<int, Complex> coeffs;
  for (const auto& e : j["coeffs"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer()) {
      throw ValidationError("symbol.coeffs: expected [n, re, im] with integer n");
    }
    coeffs[e[0].get<int>()] = Complex(e[1].get<double>(), e[2].get<double>());
  }
  try {
    return FourierSymbol(std::move(coeffs));
  } catch (const InvalidInput& e) {
    throw ValidationError(e.what());
  }
}

Problem parse_problem(const json& j) {
  Problem p;
  if (!j.is_object()) throw ValidationError("problem: expected a JSON object");
  p.kind = j.value("kind", "");
  if (p.kind != "lambda_toeplitz" && p.kind != "wco") {
    throw ValidationError("kind: expected \"lambda_toeplitz\" or \"wco\"");
  }
  if (!j.contains("symbol")) throw ValidationError("symbol: missing");
  p.symbol = parse_symbol(j["symbol"]);

  bool has_rot = j.contains("rotation");
  bool has_aut = j.contains("automorphism");
  if (has_rot == has_aut || has_rot != (p.kind == "lambda_toeplitz")) {
    throw ValidationError(
        "exactly one of rotation/automorphism must be present, matching kind");
  }
  try {
    if (has_rot) {
      const json& r = j["rotation"];
      if (!r.is_object() || !r.contains("p") || !r.contains("q") ||
          !r["p"].is_number_integer() || !r["q"].is_number_integer()) {
        throw ValidationError("rotation: expected {\"p\": int, \"q\": int}");
      }
      p.rotation.emplace(r["p"].get<long>(), r["q"].get<long>());
    } else {
      const json& a = j["automorphism"];
      if (!a.is_object() || !a.contains("alpha") || !a.contains("w")) {
        throw ValidationError(
            "automorphism: expected {\"alpha\": float, \"w\": [re, im]}");
      }
      p.automorphism.emplace(a["alpha"].get<double>(),
                             parse_complex(a["w"], "automorphism.w"));
    }
  } catch (const InvalidInput& e) {
    throw ValidationError(e.what());
  }

  for (const auto& q : j.value("queries", json::array())) {
    p.queries.push_back(parse_complex(q, "queries"));
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object() || !g.contains("box") || !g.contains("resolution")) {
      throw ValidationError("grid: expected {\"box\": [...], \"resolution\": int}");
    }
    const json& b = g["box"];
    if (!b.is_array() || b.size() != 4) {
      throw ValidationError("grid.box: expected [re_min, re_max, im_min, im_max]");
    }
    p.box = Box{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                b[3].get<double>()};
    p.resolution = g["resolution"].get<int>();
  }
  if (j.contains("tolerances")) {
    p.tol = j["tolerances"].value("tol", p.tol);
    if (!(p.tol > 0.0)) throw ValidationError("tolerances.tol: must be positive");
  }
  return p;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("JSON parse error: ") + e.what());
  }
}

void atomic_write(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw ValidationError("write failed: " + path);
  }
  std::filesystem::rename(tmp, path);
}

json provenance(const Problem& p) {
  return json{{"tool", "lamtop"},
              {"version", kVersion},
              {"tol", p.tol},
              {"winding_initial_samples", 256},
              {"min_distance_seed", std::max(4096, 64 * p.symbol.degree())}};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json classification_json(Complex mu, const SpectralClassification& c) {
  json rec{{"mu", complex_json(mu)},
           {"kind", to_string(c.kind)},
           {"distance", c.distance}};
  if (c.index) rec["index"] = *c.index;
  return rec;
}

// The (product symbol, rotation) pair every spectral question reduces to.
struct Reduced {
  FourierSymbol product;
  RationalRotation rotation;
  FourierSymbol twisted;  // the twisted single factor
  FourierSymbol factor;   // the lambda-Toeplitz symbol itself
};

Reduced reduce(const Problem& p) {
  if (p.rotation) {
    FourierSymbol tw = twist(p.symbol, *p.rotation);
    return {product_symbol(tw, *p.rotation, p.rotation->q()), *p.rotation,
            std::move(tw), p.symbol};
  }
  WcoReduction red = wco_reduce(p.symbol, *p.automorphism);
  FourierSymbol tw = twist(red.pullback, red.rotation);
  return {std::move(red.product), red.rotation, std::move(tw),
          std::move(red.pullback)};
}

int cmd_classify(const std::string& input, const std::string& output,
                 std::optional<double> tol_flag, long norm_dim) {
  Problem p = parse_problem(load_json(input));
  if (tol_flag) p.tol = *tol_flag;
  Reduced red = reduce(p);

  json results = json::array();
  for (Complex mu : p.queries) {
    results.push_back(
        classification_json(mu, classify(red.product, red.rotation, mu, p.tol)));
  }
  json scalars{{"ess_radius", ess_radius(red.product, red.rotation)},
               {"sup_norm_twisted", sup_norm(red.twisted)}};
  if (norm_dim > 0) {
    scalars["operator_norm_estimate"] =
        op_norm(build_lambda_toeplitz(red.factor, red.rotation, norm_dim));
  }
  json doc{{"results", results},
           {"scalars", scalars},
           {"provenance", provenance(p)}};
  atomic_write(output, doc.dump(2) + "\n");
  return 0;
}

struct Rgb {
  unsigned char r, g, b;
};

Rgb node_color(const SpectralClassification& c) {
  switch (c.kind) {
    case SpectralKind::Resolvent: return {255, 255, 255};
    case SpectralKind::EssentialSpectrum: return {0, 0, 0};
    case SpectralKind::NearBoundary: return {160, 160, 160};
    case SpectralKind::FredholmHole: break;
  }
  static constexpr Rgb palette[6] = {{220, 60, 60},  {60, 120, 220},
                                     {240, 180, 40}, {60, 180, 120},
                                     {170, 80, 200}, {240, 120, 40}};
  long k = c.index ? std::llabs(*c.index) - 1 : 0;
  return palette[k % 6];
}

std::string render_ppm(const RegionGrid& grid) {
  const int res = grid.resolution;
  std::string out = "P6\n" + std::to_string(res) + " " + std::to_string(res) +
                    "\n255\n";
  out.reserve(out.size() + 3u * res * res);
  for (int iy = res - 1; iy >= 0; --iy) {  // top row = im_max
    for (int ix = 0; ix < res; ++ix) {
      Rgb c = node_color(grid.at(ix, iy));
      out.push_back(static_cast<char>(c.r));
      out.push_back(static_cast<char>(c.g));
      out.push_back(static_cast<char>(c.b));
    }
  }
  return out;
}

std::string render_svg(const RegionGrid& grid) {
  const int res = grid.resolution;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << res
      << "\" height=\"" << res << "\" shape-rendering=\"crispEdges\">\n";
  char hex[8];
  for (int row = 0; row < res; ++row) {
    int iy = res - 1 - row;  // top row = im_max
    int run_start = 0;
    Rgb run = node_color(grid.at(0, iy));
    auto flush = [&](int end) {
      std::snprintf(hex, sizeof hex, "#%02x%02x%02x", run.r, run.g, run.b);
      out << "<rect x=\"" << run_start << "\" y=\"" << row << "\" width=\""
          << end - run_start << "\" height=\"1\" fill=\"" << hex << "\"/>\n";
    };
    for (int ix = 1; ix < res; ++ix) {
      Rgb c = node_color(grid.at(ix, iy));
      if (c.r != run.r || c.g != run.g || c.b != run.b) {
        flush(ix);
        run = c;
        run_start = ix;
      }
    }
    flush(res);
  }
  out << "</svg>\n";
  return out.str();
}

int cmd_region(const std::string& input, const std::string& output,
               const std::string& format, std::optional<double> tol_flag,
               int resolution_flag) {
  Problem p = parse_problem(load_json(input));
  if (tol_flag) p.tol = *tol_flag;
  if (resolution_flag > 0) p.resolution = resolution_flag;
  if (!p.box || !p.resolution) {
    throw ValidationError("region: grid {box, resolution} required");
  }
  if (*p.resolution < 1 || *p.resolution > 4096) {
    throw ValidationError("region: resolution must be in [1, 4096]");
  }
  Reduced red = reduce(p);
  RegionGrid grid =
      region_grid(red.product, red.rotation, *p.box, *p.resolution, p.tol);
  atomic_write(output, format == "svg" ? render_svg(grid) : render_ppm(grid));
  return 0;
}

std::vector<long> parse_schedule(const std::string& csv) {
  std::vector<long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      long n = std::stol(item, &pos);
      if (pos != item.size() || n < 1) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw ValidationError("schedule: expected comma-separated positive ints");
    }
  }
  if (out.empty()) throw ValidationError("schedule: empty");
  return out;
}

int cmd_validate(const std::string& input, const std::string& output,
                 const std::string& schedule_csv) {
  Problem p = parse_problem(load_json(input));
  if (p.kind != "lambda_toeplitz") {
    throw ValidationError("validate: lambda_toeplitz problems only");
  }
  std::vector<long> schedule = parse_schedule(schedule_csv);
  for (long n : schedule) {
    if (n > DenseOperator::kMaxDimension) {
      throw ValidationError("validate: dimension " + std::to_string(n) +
                            " exceeds the cap of " +
                            std::to_string(DenseOperator::kMaxDimension));
    }
  }
  const RationalRotation& r = *p.rotation;
  FourierSymbol tw = twist(p.symbol, r);
  FourierSymbol prod = product_symbol(tw, r, r.q());
  bool analytic = p.symbol.is_analytic();

  double fact_err = 0.0;
  double power_err = 0.0;
  json norms = json::array();
  json sigmins = json::array();
  std::vector<json> per_mu(p.queries.size());
  for (size_t i = 0; i < p.queries.size(); ++i) {
    per_mu[i] = json{{"mu", complex_json(p.queries[i])},
                     {"values", json::array()}};
  }
  for (long n : schedule) {
    DenseOperator t = build_lambda_toeplitz(p.symbol, r, n);
    DenseOperator u = build_rotation_unitary(r, n);
    DenseOperator tpsi = build_toeplitz(tw, n);
    fact_err = std::max(
        fact_err,
        (t.matrix() - u.matrix() * tpsi.matrix()).cwiseAbs().maxCoeff());
    if (analytic) {
      Eigen::MatrixXcd pw = Eigen::MatrixXcd::Identity(n, n);
      for (long k = 0; k < r.q(); ++k) pw = t.matrix() * pw;
      power_err = std::max(
          power_err,
          (pw - build_toeplitz(prod, n).matrix()).cwiseAbs().maxCoeff());
    }
    norms.push_back(json::array({n, op_norm(t)}));
    for (size_t i = 0; i < p.queries.size(); ++i) {
      per_mu[i]["values"].push_back(
          json::array({n, smallest_singular(t, p.queries[i])}));
    }
  }
  for (auto& rec : per_mu) sigmins.push_back(std::move(rec));

  json validation{{"factorization_max_abs_error", fact_err},
                  {"op_norm", norms},
                  {"sigma_min", sigmins},
                  {"schedule", schedule}};
  if (analytic) validation["power_identity_max_abs_error"] = power_err;
  json doc{{"scalars",
            {{"ess_radius", ess_radius(prod, r)},
             {"sup_norm_twisted", sup_norm(tw)}}},
           {"validation", validation},
           {"provenance", provenance(p)}};
  atomic_write(output, doc.dump(2) + "\n");
  return 0;
}

json diagnostics(const std::string& category, const std::string& message) {
  return json{{"error", {{"category", category}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of lambda-Toeplitz and weighted composition operators"};
  app.require_subcommand(1);

  std::string input, output;
  std::string format = "ppm";
  std::string schedule = "256,512,1024";
  double tol = -1.0;
  int resolution = 0;
  long norm_dim = 0;

  auto* cls = app.add_subcommand("classify",
                                 "Classify query points against the spectrum");
  cls->add_option("--input", input, "Problem JSON path")->required();
  cls->add_option("--output", output, "Result JSON path")->required();
  cls->add_option("--tol", tol, "Curve-proximity tolerance (default 1e-8)");
  cls->add_option("--norm-dim", norm_dim,
                  "Also report op_norm of this truncation size (default: off)");

  auto* reg = app.add_subcommand("region", "Raster the spectral region");
  reg->add_option("--input", input, "Problem JSON path")->required();
  reg->add_option("--output", output, "Raster output path")->required();
  reg->add_option("--format", format, "Output format (default ppm)")
      ->check(CLI::IsMember({"ppm", "svg"}));
  reg->add_option("--tol", tol, "Curve-proximity tolerance (default 1e-8)");
  reg->add_option("--resolution", resolution,
                  "Override grid resolution from the problem file");

  auto* val = app.add_subcommand("validate",
                                 "Run the finite-section matrix oracle");
  val->add_option("--input", input, "Problem JSON path")->required();
  val->add_option("--output", output, "Result JSON path")->required();
  val->add_option("--schedule", schedule,
                  "Comma-separated truncation sizes (default 256,512,1024)");

  CLI11_PARSE(app, argc, argv);
  std::optional<double> tol_flag;
  if (tol > 0.0) tol_flag = tol;

  try {
    if (cls->parsed()) return cmd_classify(input, output, tol_flag, norm_dim);
    if (reg->parsed()) return cmd_region(input, output, format, tol_flag, resolution);
    return cmd_validate(input, output, schedule);
  } catch (const ValidationError& e) {
    std::cerr << diagnostics("validation", e.what()).dump() << "\n";
    return 2;
  } catch (const DimensionCap& e) {
    std::cerr << diagnostics("validation", e.what()).dump() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << diagnostics("validation", e.what()).dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << diagnostics("computation", e.what()).dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << diagnostics("computation", e.what()).dump() << "\n";
    return 3;
  }
}
