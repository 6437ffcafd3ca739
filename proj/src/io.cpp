#include "domainwall/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <system_error>

namespace domainwall::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

nlohmann::json deviation_json(const WeightedDeviation& d) {
  return {{"phi1", d.phi1}, {"phi2", d.phi2}, {"w1", d.w1}};
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc{} || result.ptr != end || text.empty()) {
    throw InvalidArgument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

void write_profile_csv(std::ostream& out, const CartesianProfile& p) {
  const auto cols = derived_columns(p);
  out << "# lambda=" << format_double(p.params.lambda()) << '\n'
      << "# coupling=" << format_double(p.params.coupling()) << '\n'
      << "# eps=" << format_double(p.params.eps()) << '\n'
      << "# L=" << format_double(p.mesh.half_length()) << '\n'
      << "# n=" << p.mesh.size() << '\n'
      << "# center=" << format_double(p.center) << '\n'
      << kProfileHeader << '\n';
  for (std::size_t i = 0; i < p.mesh.size(); ++i) {
    const double row[] = {p.mesh[i],    p.u[i],       p.v[i],       cols.du_dx[i], cols.dv_dx[i],
                          cols.w1[i],   cols.w2[i],   cols.phi1[i], cols.phi2[i],  cols.ham_residual[i]};
    for (std::size_t k = 0; k < std::size(row); ++k) {
      if (k) out << ',';
      out << format_double(row[k]);
    }
    out << '\n';
  }
}

void write_profile_csv(const std::filesystem::path& path, const CartesianProfile& profile) {
  auto out = open_for_write(path);
  write_profile_csv(out, profile);
}

CartesianProfile read_profile_csv(std::istream& in) {
  std::map<std::string, std::string, std::less<>> meta;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> x, u, v;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (!header_seen) {
      if (text.front() == '#') {
        const auto body = trim(text.substr(1));
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw MalformedFile("metadata line without '='", line_no);
        meta[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
        continue;
      }
      if (text != kProfileHeader) {
        throw SchemaMismatch("expected header '" + std::string(kProfileHeader) + "', got '" +
                             std::string(text) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(text, ',');
    if (fields.size() != 10) {
      throw MalformedFile("expected 10 fields, got " + std::to_string(fields.size()), line_no);
    }
    double values[10];
    try {
      for (std::size_t k = 0; k < 10; ++k) values[k] = parse_double(fields[k]);
    } catch (const InvalidArgument& e) {
      throw MalformedFile(e.what(), line_no);
    }
    x.push_back(values[0]);
    u.push_back(values[1]);
    v.push_back(values[2]);
  }
  if (!header_seen) throw SchemaMismatch("missing column header");

  auto number = [&](const char* key) {
    const auto it = meta.find(key);
    if (it == meta.end()) throw MalformedFile(std::string("missing metadata '") + key + "'", line_no);
    try {
      return parse_double(it->second);
    } catch (const InvalidArgument& e) {
      throw MalformedFile(std::string("metadata '") + key + "': " + e.what(), line_no);
    }
  };
  const double lambda = number("lambda");
  const double coupling = number("coupling");
  const double eps = number("eps");
  const double center = number("center");
  const double n = number("n");
  if (n != static_cast<double>(x.size())) {
    throw MalformedFile("metadata n = " + format_double(n) + " but " + std::to_string(x.size()) +
                            " rows were read",
                        line_no);
  }
  try {
    return CartesianProfile{Mesh::from_nodes(std::move(x)), std::move(u), std::move(v),
                            ModelParams::from_pair(lambda, coupling, eps), center, {}};
  } catch (const InvalidArgument& e) {
    throw MalformedFile(e.what(), line_no);
  }
}

CartesianProfile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_profile_csv(in);
}

void write_reduced_csv(std::ostream& out, const ReducedSolution& reduced) {
  const auto lift = singular_lift(reduced);
  out << "# lambda=" << format_double(reduced.lambda) << '\n'
      << "# L=" << format_double(reduced.mesh.half_length()) << '\n'
      << "# n=" << reduced.mesh.size() << '\n'
      << kReducedHeader << '\n';
  for (std::size_t i = 0; i < reduced.mesh.size(); ++i) {
    out << format_double(reduced.mesh[i]) << ',' << format_double(reduced.phi1[i]) << ','
        << format_double(reduced.phi2[i]) << ',' << format_double(lift.w1[i]) << '\n';
  }
}

void write_reduced_csv(const std::filesystem::path& path, const ReducedSolution& reduced) {
  auto out = open_for_write(path);
  write_reduced_csv(out, reduced);
}

nlohmann::json profile_to_json(const CartesianProfile& p) {
  const auto cols = derived_columns(p);
  return {{"lambda", p.params.lambda()},
          {"coupling", p.params.coupling()},
          {"eps", p.params.eps()},
          {"L", p.mesh.half_length()},
          {"n", p.mesh.size()},
          {"center", p.center},
          {"x", p.mesh.nodes()},
          {"u", p.u},
          {"v", p.v},
          {"du_dx", cols.du_dx},
          {"dv_dx", cols.dv_dx},
          {"w1", cols.w1},
          {"w2", cols.w2},
          {"phi1", cols.phi1},
          {"phi2", cols.phi2},
          {"ham_residual", cols.ham_residual}};
}

nlohmann::json reduced_to_json(const ReducedSolution& reduced) {
  return {{"lambda", reduced.lambda}, {"L", reduced.mesh.half_length()},
          {"n", reduced.mesh.size()}, {"x", reduced.mesh.nodes()},
          {"phi1", reduced.phi1},     {"phi2", reduced.phi2},
          {"w1", singular_lift(reduced).w1}};
}

const std::vector<std::string>& report_keys() {
  static const std::vector<std::string> keys{
      "lambda",          "coupling",          "eps",          "L",
      "n",               "center",            "hamiltonian_sup", "monotone_u",
      "monotone_v",      "disk_bound",        "angle_decreasing", "phi2_negative",
      "symmetry_defect", "manifold_distance", "weighted_deviations", "energy",
      "sigma_ratio",     "sigma_ratio_limit", "passed"};
  return keys;
}

const std::vector<std::string>& rate_study_keys() {
  static const std::vector<std::string> keys{"lambda", "eps_list", "sigma_limit", "points",
                                             "slopes", "halving_ratios"};
  return keys;
}

const std::vector<std::string>& spectrum_keys() {
  static const std::vector<std::string> keys{"side",           "lambda",          "coupling",
                                             "eps",            "eigenvalues",     "eigendirections",
                                             "numerical_eigenvalues", "max_relative_error"};
  return keys;
}

nlohmann::json report_to_json(const ValidationReport& r, const CartesianProfile& p) {
  nlohmann::json j;
  j["lambda"] = p.params.lambda();
  j["coupling"] = p.params.coupling();
  j["eps"] = p.params.eps();
  j["L"] = p.mesh.half_length();
  j["n"] = p.mesh.size();
  j["center"] = p.center;
  j["hamiltonian_sup"] = r.hamiltonian_sup;
  j["monotone_u"] = r.monotone_u;
  j["monotone_v"] = r.monotone_v;
  j["disk_bound"] = r.disk_bound;
  j["angle_decreasing"] = r.angle_decreasing;
  j["phi2_negative"] = r.phi2_negative;
  j["symmetry_defect"] = r.symmetry_defect ? nlohmann::json(*r.symmetry_defect) : nlohmann::json();
  j["manifold_distance"] = r.manifold_distance;
  j["weighted_deviations"] = deviation_json(r.weighted_deviations);
  j["energy"] = r.energy;
  j["sigma_ratio"] = r.sigma_ratio;
  j["sigma_ratio_limit"] = sigma_ratio_limit(p.params.lambda());
  j["passed"] = r.structure_ok();
  return j;
}

nlohmann::json rate_study_to_json(const RateStudy& s) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t k = 0; k < s.eps_list.size(); ++k) {
    points.push_back({{"eps", s.eps_list[k]},
                      {"weighted_deviations", deviation_json(s.deviations[k])},
                      {"sigma_ratio", s.sigma_ratio[k]},
                      {"sigma_deviation", s.sigma_deviation[k]},
                      {"hamiltonian_sup", s.reports[k].hamiltonian_sup},
                      {"passed", s.reports[k].structure_ok()}});
  }
  nlohmann::json ratios = nlohmann::json::array();
  for (std::size_t k = 0; k < s.halving_ratios.size(); ++k) {
    auto entry = deviation_json(s.halving_ratios[k]);
    entry["sigma"] = s.sigma_halving_ratios[k];
    ratios.push_back(entry);
  }
  auto slopes = deviation_json(s.slopes);
  slopes["sigma"] = s.sigma_slope;
  return {{"lambda", s.lambda},   {"eps_list", s.eps_list}, {"sigma_limit", s.sigma_limit},
          {"points", points},     {"slopes", slopes},       {"halving_ratios", ratios}};
}

nlohmann::json spectrum_to_json(EquilibriumSide side, const ModelParams& params) {
  const auto spec = analytic_spectrum(side, params);
  const auto numeric = real_eigenvalues(linearize_slowfast(equilibrium_state(side), params));
  auto sorted = spec.eigenvalues;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(numeric[i] - sorted[i]) / std::abs(sorted[i]));
  }
  nlohmann::json directions = nlohmann::json::array();
  for (const auto& d : spec.eigendirections) directions.push_back({d[0], d[1], d[2], d[3]});
  return {{"side", to_string(side)},
          {"lambda", params.lambda()},
          {"coupling", params.coupling()},
          {"eps", params.eps()},
          {"eigenvalues", spec.eigenvalues},
          {"eigendirections", directions},
          {"numerical_eigenvalues", numeric},
          {"max_relative_error", worst}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace domainwall::io
