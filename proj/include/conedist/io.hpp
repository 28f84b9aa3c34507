#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conedist/bench.hpp"
#include "conedist/blp.hpp"
#include "conedist/instance.hpp"
#include "conedist/nnls.hpp"
#include "conedist/slice.hpp"
#include "conedist/solver.hpp"

namespace conedist {

// On-disk description of a problem: explicit points or a binary system.
// Exactly one of `points` and `blp` is present.
struct InstanceDocument {
  std::size_t n = 0;
  Vector target;
  std::optional<std::vector<Vector>> points;
  std::optional<BlpSystem> blp;
};

// 17 significant digits; every double round-trips exactly.
inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

// Compact form for benchmark tables.
inline std::string format_double6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

inline std::string status_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::TargetUnreachable: return "target_unreachable";
  }
  return "unknown";
}

namespace detail {

using Json = nlohmann::json;

[[noreturn]] inline void doc_error(const std::string& origin, const std::string& message) {
  throw InputError(origin.empty() ? message : origin + ": " + message);
}

inline double finite_number(const Json& value, const std::string& where,
                            const std::string& origin) {
  if (!value.is_number()) doc_error(origin, where + " must be a number");
  const double number = value.get<double>();
  if (!std::isfinite(number)) doc_error(origin, where + " is not finite");
  return number;
}

// Reads an array of `expected` finite numbers; entries must be nonnegative
// when nonneg is set. Diagnostics carry the 0-based entry path, e.g.
// "points[4][2] is negative (-0.5)".
inline Vector number_array(const Json& value, std::size_t expected, bool nonneg,
                           const std::string& where, const std::string& origin) {
  if (!value.is_array()) doc_error(origin, where + " must be an array");
  if (value.size() != expected) {
    doc_error(origin, where + " has " + std::to_string(value.size()) + " entries, expected " +
                          std::to_string(expected));
  }
  Vector result(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    const std::string entry = where + "[" + std::to_string(i) + "]";
    const double number = finite_number(value[i], entry, origin);
    if (nonneg && number < 0.0) {
      doc_error(origin, entry + " is negative (" + format_double(number) + ")");
    }
    result[static_cast<Eigen::Index>(i)] = number;
  }
  return result;
}

inline void check_known_keys(const Json& object, std::initializer_list<const char*> known,
                             const std::string& where, const std::string& origin) {
  for (const auto& item : object.items()) {
    bool ok = false;
    for (const char* key : known) {
      if (item.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) doc_error(origin, where + " has an unknown field \"" + item.key() + "\"");
  }
}

inline BlpSystem parse_blp(const Json& value, std::size_t instance_n, const std::string& origin) {
  if (!value.is_object()) doc_error(origin, "\"blp\" must be an object");
  check_known_keys(value, {"n", "rows"}, "\"blp\"", origin);
  if (!value.contains("n") || !value["n"].is_number_unsigned()) {
    doc_error(origin, "blp.n must be a positive integer");
  }
  BlpSystem system;
  system.n = value["n"].get<std::size_t>();
  if (system.n != instance_n) {
    doc_error(origin, "blp.n (" + std::to_string(system.n) + ") must match n (" +
                          std::to_string(instance_n) + ")");
  }
  if (!value.contains("rows") || !value["rows"].is_array()) {
    doc_error(origin, "blp.rows must be an array");
  }
  const Json& rows = value["rows"];
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "blp.rows[" + std::to_string(r) + "]";
    const Json& row = rows[r];
    if (!row.is_object()) doc_error(origin, where + " must be an object");
    check_known_keys(row, {"coeffs", "sense", "rhs"}, where, origin);
    if (!row.contains("coeffs") || !row.contains("sense") || !row.contains("rhs")) {
      doc_error(origin, where + " needs \"coeffs\", \"sense\" and \"rhs\"");
    }
    BlpRow parsed;
    parsed.coeffs = number_array(row["coeffs"], system.n, false, where + ".coeffs", origin);
    if (!row["sense"].is_string()) doc_error(origin, where + ".sense must be a string");
    const std::string sense = row["sense"].get<std::string>();
    if (sense == "<=") {
      parsed.sense = BlpSense::LessEqual;
    } else if (sense == "=") {
      parsed.sense = BlpSense::Equal;
    } else if (sense == ">=") {
      parsed.sense = BlpSense::GreaterEqual;
    } else {
      doc_error(origin, where + ".sense must be \"<=\", \"=\" or \">=\", got \"" + sense + "\"");
    }
    parsed.rhs = finite_number(row["rhs"], where + ".rhs", origin);
    system.rows.push_back(std::move(parsed));
  }
  return system;
}

inline void write_vector_json(std::ostream& out, const Vector& v) {
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << format_double(v[i]);
  }
  out << ']';
}

inline void write_index_array(std::ostream& out, const std::vector<std::size_t>& indices) {
  out << '[';
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out << ", ";
    out << indices[i];
  }
  out << ']';
}

}  // namespace detail

// Parses and validates an instance document. `origin` (usually the file
// path) prefixes every diagnostic.
inline InstanceDocument parse_instance_document(const std::string& text,
                                                const std::string& origin = "") {
  detail::Json root;
  try {
    root = detail::Json::parse(text);
  } catch (const detail::Json::exception& e) {
    // Covers syntax errors and lexer-level range failures alike (e.g. 1e999).
    detail::doc_error(origin, std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) detail::doc_error(origin, "top level must be an object");
  detail::check_known_keys(root, {"n", "target", "points", "blp"}, "document", origin);
  if (!root.contains("n") || !root["n"].is_number_unsigned()) {
    detail::doc_error(origin, "\"n\" must be a positive integer");
  }
  InstanceDocument doc;
  doc.n = root["n"].get<std::size_t>();
  if (doc.n == 0) detail::doc_error(origin, "\"n\" must be a positive integer");
  if (!root.contains("target")) detail::doc_error(origin, "\"target\" is required");
  doc.target = detail::number_array(root["target"], doc.n, true, "target", origin);

  const bool has_points = root.contains("points");
  const bool has_blp = root.contains("blp");
  if (has_points == has_blp) {
    detail::doc_error(origin, "exactly one of \"points\" and \"blp\" is required");
  }
  if (has_points) {
    const detail::Json& points = root["points"];
    if (!points.is_array()) detail::doc_error(origin, "\"points\" must be an array");
    if (points.empty()) detail::doc_error(origin, "\"points\" must not be empty");
    std::vector<Vector> parsed;
    parsed.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      parsed.push_back(detail::number_array(points[i], doc.n, true,
                                            "points[" + std::to_string(i) + "]", origin));
    }
    doc.points = std::move(parsed);
  } else {
    doc.blp = detail::parse_blp(root["blp"], doc.n, origin);
  }
  return doc;
}

inline InstanceDocument read_instance_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_document(buffer.str(), path);
}

// Materializes the generator set (enumerating a binary system if present)
// and runs full instance validation.
inline Instance to_instance(const InstanceDocument& doc,
                            std::size_t blp_cap = kDefaultBlpEnumerationCap) {
  Instance instance;
  instance.target = doc.target;
  if (doc.points) {
    instance.generators = *doc.points;
  } else {
    instance.generators = enumerate_blp(*doc.blp, blp_cap);
    if (instance.generators.empty()) {
      throw InputError("instance: the binary system has no feasible points");
    }
  }
  validate_instance(instance);
  return instance;
}

// Writers emit a fixed field order and 17-digit numbers, so identical inputs
// produce byte-identical documents.

inline void write_instance_document(std::ostream& out, const InstanceDocument& doc) {
  out << "{\n  \"n\": " << doc.n << ",\n  \"target\": ";
  detail::write_vector_json(out, doc.target);
  if (doc.points) {
    out << ",\n  \"points\": [\n";
    for (std::size_t i = 0; i < doc.points->size(); ++i) {
      out << "    ";
      detail::write_vector_json(out, (*doc.points)[i]);
      out << (i + 1 < doc.points->size() ? ",\n" : "\n");
    }
    out << "  ]";
  } else {
    const BlpSystem& system = *doc.blp;
    out << ",\n  \"blp\": {\n    \"n\": " << system.n << ",\n    \"rows\": [\n";
    for (std::size_t r = 0; r < system.rows.size(); ++r) {
      const BlpRow& row = system.rows[r];
      out << "      {\"coeffs\": ";
      detail::write_vector_json(out, row.coeffs);
      out << ", \"sense\": \"";
      switch (row.sense) {
        case BlpSense::LessEqual: out << "<="; break;
        case BlpSense::Equal: out << "="; break;
        case BlpSense::GreaterEqual: out << ">="; break;
      }
      out << "\", \"rhs\": " << format_double(row.rhs) << '}';
      out << (r + 1 < system.rows.size() ? ",\n" : "\n");
    }
    out << "    ]\n  }";
  }
  out << "\n}\n";
}

inline void write_solution_document(std::ostream& out, const Solution& solution) {
  out << "{\n  \"status\": \"" << status_string(solution.status) << "\",\n";
  out << "  \"distance\": " << format_double(solution.distance) << ",\n";
  out << "  \"distance_sq\": " << format_double(solution.distance * solution.distance) << ",\n";
  out << "  \"iterations\": " << solution.iterations << ",\n";
  out << "  \"final_gap\": " << format_double(solution.final_gap);
  if (solution.certificate) {
    out << ",\n  \"rho\": " << format_double(solution.certificate->rho);
    out << ",\n  \"diam_sq_bound\": " << format_double(solution.certificate->diam_sq_bound);
  }
  out << ",\n  \"z_star\": ";
  detail::write_vector_json(out, solution.z_star);
  if (solution.z_slice) {
    out << ",\n  \"z_slice\": ";
    detail::write_vector_json(out, *solution.z_slice);
  }
  if (!solution.support.empty()) {
    out << ",\n  \"support\": [\n";
    for (std::size_t i = 0; i < solution.support.size(); ++i) {
      out << "    {\"index\": " << solution.support[i].index
          << ", \"coefficient\": " << format_double(solution.support[i].coefficient) << '}';
      out << (i + 1 < solution.support.size() ? ",\n" : "\n");
    }
    out << "  ]";
  }
  out << "\n}\n";
}

inline void write_geometry_document(std::ostream& out, const SliceGeometry& geometry) {
  out << "{\n  \"target_norm_sq\": " << format_double(geometry.target_norm_sq) << ",\n";
  out << "  \"vertex_indices\": ";
  detail::write_index_array(out, geometry.vertex_indices);
  out << ",\n  \"ray_indices\": ";
  detail::write_index_array(out, geometry.ray_indices);
  out << ",\n  \"vertices\": [";
  for (std::size_t i = 0; i < geometry.vertices.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    detail::write_vector_json(out, geometry.vertices[i]);
  }
  out << (geometry.vertices.empty() ? "]" : "\n  ]") << "\n}\n";
}

inline void write_verification_document(std::ostream& out, const VerificationReport& report) {
  const auto check_line = [&out](const char* name, const CheckResult& check, const char* tail) {
    out << "    {\"name\": \"" << name << "\", \"pass\": " << (check.pass ? "true" : "false")
        << ", \"residual\": " << format_double(check.residual) << '}' << tail;
  };
  out << "{\n  \"pass\": " << (report.pass ? "true" : "false") << ",\n";
  out << "  \"oracle_distance_sq\": " << format_double(report.oracle_distance_sq) << ",\n";
  out << "  \"checks\": [\n";
  check_line("distance_agreement", report.distance_agreement, ",\n");
  check_line("cone_membership", report.cone_membership, ",\n");
  check_line("slice_scaling", report.slice_scaling, "\n");
  out << "  ]\n}\n";
}

inline void write_history_csv(std::ostream& out, const std::vector<IterationRecord>& history) {
  out << "k,objective,gap\n";
  for (std::size_t k = 0; k < history.size(); ++k) {
    out << k << ',' << format_double(history[k].objective) << ','
        << format_double(history[k].gap) << '\n';
  }
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,m,nc,cf,trials,mean_iterations,mean_distance,mean_wall_time_s,failures\n";
  for (const BenchRow& row : rows) {
    out << row.n << ',' << row.m << ',' << row.num_clusters << ','
        << format_double6(row.cluster_coefficient) << ',' << row.trials << ','
        << format_double6(row.mean_iterations) << ',' << format_double6(row.mean_distance) << ','
        << format_double6(row.mean_wall_time_s) << ',' << row.failures << '\n';
  }
}

}  // namespace conedist
