// Command-line front end: measures, classify, trajectory, isosurface and
// verify-oracle subcommands with deterministic JSON/CSV output.
#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "belldiag/decoherence.hpp"
#include "belldiag/isosurface.hpp"
#include "belldiag/measures.hpp"
#include "belldiag/oracle.hpp"
#include "belldiag/sampling.hpp"
#include "belldiag/state.hpp"

namespace {

using namespace belldiag;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

// 17 significant digits: round-trip safe and locale-independent.
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string vertex_label(const BellLabel& label) {
  return std::to_string(label.a) + std::to_string(label.b);
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Comma-separated decimals, no whitespace, locale-independent.
CorrelationVector parse_triple(const std::string& text) {
  double parts[3];
  const char* cursor = text.data();
  const char* end = text.data() + text.size();
  for (int j = 0; j < 3; ++j) {
    auto [next, ec] = std::from_chars(cursor, end, parts[j]);
    if (ec != std::errc{}) {
      throw UsageError("cannot parse component " + std::to_string(j + 1) + " of '" + text +
                       "'");
    }
    cursor = next;
    if (j < 2) {
      if (cursor == end || *cursor != ',') {
        throw UsageError("expected ',' after component " + std::to_string(j + 1) + " in '" +
                         text + "'");
      }
      ++cursor;
    }
  }
  if (cursor != end) throw UsageError("trailing characters in triple '" + text + "'");
  return {parts[0], parts[1], parts[2]};
}

ChannelKind parse_channel(const std::string& name) {
  if (name == "phase") return ChannelKind::phase;
  if (name == "bit") return ChannelKind::bit;
  if (name == "bitphase") return ChannelKind::bitphase;
  throw UsageError("unknown channel '" + name + "' (expected phase|bit|bitphase)");
}

ScalarFieldId parse_field(const std::string& name) {
  if (auto f = field_from_string(name)) return *f;
  throw UsageError("unknown field '" + name +
                   "' (expected discord|classical|mutual_info|concurrence|eof)");
}

void append_state_json(std::ostringstream& out, const CorrelationVector& c) {
  out << "\"c1\":" << fmt17(c.c1) << ",\"c2\":" << fmt17(c.c2) << ",\"c3\":" << fmt17(c.c3);
}

int cmd_measures(const std::string& triple, const std::string& format) {
  const CorrelationVector c = parse_triple(triple);
  const CorrelationMeasures m = all_measures(c);  // throws domain_error when unphysical
  const StateClass cls = classify(c);
  std::ostringstream out;
  if (format == "csv") {
    out << "c1,c2,c3,mutual_info,classical,discord,concurrence,eof,c_max,physical,"
           "separable,classical_state,dominant_vertex\n";
    out << fmt17(c.c1) << ',' << fmt17(c.c2) << ',' << fmt17(c.c3) << ','
        << fmt17(m.mutual_info) << ',' << fmt17(m.classical) << ',' << fmt17(m.discord)
        << ',' << fmt17(m.concurrence) << ',' << fmt17(m.eof) << ',' << fmt17(m.c_max)
        << ',' << json_bool(cls.physical) << ',' << json_bool(cls.separable) << ','
        << json_bool(cls.classical) << ',' << vertex_label(cls.dominant_vertex) << '\n';
  } else {
    out << '{';
    append_state_json(out, c);
    out << ",\"mutual_info\":" << fmt17(m.mutual_info)
        << ",\"classical\":" << fmt17(m.classical) << ",\"discord\":" << fmt17(m.discord)
        << ",\"concurrence\":" << fmt17(m.concurrence) << ",\"eof\":" << fmt17(m.eof)
        << ",\"c_max\":" << fmt17(m.c_max) << ",\"physical\":" << json_bool(cls.physical)
        << ",\"separable\":" << json_bool(cls.separable)
        << ",\"classical_state\":" << json_bool(cls.classical) << ",\"dominant_vertex\":\""
        << vertex_label(cls.dominant_vertex) << "\"}\n";
  }
  std::cout << out.str();
  return 0;
}

int cmd_classify(const std::string& triple) {
  const CorrelationVector c = parse_triple(triple);
  const StateClass cls = classify(c);
  std::ostringstream out;
  out << '{';
  append_state_json(out, c);
  out << ",\"physical\":" << json_bool(cls.physical)
      << ",\"separable\":" << json_bool(cls.separable)
      << ",\"classical_state\":" << json_bool(cls.classical) << ",\"dominant_vertex\":\""
      << vertex_label(cls.dominant_vertex) << "\"}\n";
  std::cout << out.str();
  return 0;
}

int cmd_trajectory(const std::string& triple, const std::string& channel, double gamma,
                   double t_max, int steps, const std::string& format) {
  const CorrelationVector c0 = parse_triple(triple);
  const ChannelKind kind = parse_channel(channel);
  const auto samples = trajectory(c0, kind, gamma, t_max, steps);
  const EventReport events = analytic_event_times(c0, kind, gamma);

  std::ostringstream out;
  if (format == "csv") {
    out << "t,c1,c2,c3,I,C,D,concurrence,eof\n";
    for (const TrajectorySample& s : samples) {
      out << fmt17(s.t) << ',' << fmt17(s.c.c1) << ',' << fmt17(s.c.c2) << ','
          << fmt17(s.c.c3) << ',' << fmt17(s.measures.mutual_info) << ','
          << fmt17(s.measures.classical) << ',' << fmt17(s.measures.discord) << ','
          << fmt17(s.measures.concurrence) << ',' << fmt17(s.measures.eof) << '\n';
    }
    out << "# events\n# kind,t,c1,c2,c3\n";
    for (const TrajectoryEvent& e : events.events) {
      out << "# " << to_string(e.kind) << ',' << fmt17(e.t) << ',' << fmt17(e.c_at_event.c1)
          << ',' << fmt17(e.c_at_event.c2) << ',' << fmt17(e.c_at_event.c3) << '\n';
    }
    out << "# reached_axis_asymptotic," << json_bool(events.reaches_axis_asymptotically)
        << '\n';
  } else {
    out << "{\"channel\":\"" << to_string(kind) << "\",\"gamma\":" << fmt17(gamma)
        << ",\"t_max\":" << fmt17(t_max) << ",\"steps\":" << steps << ",\"samples\":[";
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const TrajectorySample& s = samples[i];
      if (i) out << ',';
      out << "{\"t\":" << fmt17(s.t) << ',';
      append_state_json(out, s.c);
      out << ",\"mutual_info\":" << fmt17(s.measures.mutual_info)
          << ",\"classical\":" << fmt17(s.measures.classical)
          << ",\"discord\":" << fmt17(s.measures.discord)
          << ",\"concurrence\":" << fmt17(s.measures.concurrence)
          << ",\"eof\":" << fmt17(s.measures.eof) << '}';
    }
    out << "],\"events\":[";
    for (std::size_t i = 0; i < events.events.size(); ++i) {
      const TrajectoryEvent& e = events.events[i];
      if (i) out << ',';
      out << "{\"kind\":\"" << to_string(e.kind) << "\",\"t\":" << fmt17(e.t) << ',';
      append_state_json(out, e.c_at_event);
      out << '}';
    }
    out << "],\"reached_axis_asymptotic\":"
        << json_bool(events.reaches_axis_asymptotically) << "}\n";
  }
  std::cout << out.str();
  return 0;
}

int cmd_isosurface(const std::string& field_name, double level, int resolution,
                   double refine_tol, const std::string& out_path,
                   const std::string& format) {
  const ScalarFieldId field = parse_field(field_name);
  const TriangleMesh mesh = extract_level_surface(field, level, resolution, refine_tol);
  if (format == "csv") {
    export_csv(mesh, out_path);
  } else {
    export_obj(mesh, out_path);
  }
  std::ostringstream out;
  out << "{\"field\":\"" << to_string(field) << "\",\"level\":" << fmt17(level)
      << ",\"resolution\":" << resolution << ",\"refine_tol\":" << fmt17(refine_tol)
      << ",\"out\":\"" << out_path << "\",\"format\":\"" << format << '"'
      << ",\"vertices\":" << mesh.vertices.size()
      << ",\"triangles\":" << mesh.triangles.size()
      << ",\"clip_vertices\":" << mesh.clip_vertex_count()
      << ",\"components\":" << mesh.component_count()
      << ",\"max_residual\":" << fmt17(mesh.max_residual_nonclip()) << "}\n";
  std::cout << out.str();
  return 0;
}

int cmd_verify_oracle(const std::optional<std::string>& triple, int random_count,
                      std::uint64_t seed, int grid, bool refine) {
  std::vector<CorrelationVector> states;
  if (triple) {
    states.push_back(parse_triple(*triple));
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_count; ++i) states.push_back(sample_uniform_physical(rng));
  }

  constexpr double kTol = 1e-6;
  double max_gap = 0.0;
  std::ostringstream rows;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const CorrelationVector& c = states[i];
    // Closed form for the optimal measured conditional entropy.
    const double closed_form = binary_entropy((1.0 + c.max_abs()) / 2.0);
    const OracleResult oracle = minimize_conditional_entropy(c, grid, refine);
    const double gap = std::abs(oracle.min_entropy - closed_form);
    max_gap = std::max(max_gap, gap);
    if (i) rows << ',';
    rows << '{';
    append_state_json(rows, c);
    rows << ",\"closed_form\":" << fmt17(closed_form)
         << ",\"oracle\":" << fmt17(oracle.min_entropy) << ",\"gap\":" << fmt17(gap)
         << ",\"evaluations\":" << oracle.evaluations << '}';
  }
  const bool pass = max_gap <= kTol;
  std::ostringstream out;
  out << "{\"grid\":" << grid << ",\"refine\":" << json_bool(refine)
      << ",\"tolerance\":" << fmt17(kTol) << ",\"states\":[" << rows.str()
      << "],\"max_gap\":" << fmt17(max_gap) << ",\"pass\":" << json_bool(pass) << "}\n";
  std::cout << out.str();
  return pass ? 0 : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation measures, decoherence trajectories and level surfaces of "
               "Bell-diagonal two-qubit states"};
  app.require_subcommand(1);

  std::string triple;
  std::string format = "json";

  auto* measures_cmd = app.add_subcommand("measures", "All correlation measures of a state");
  measures_cmd->add_option("--c", triple, "State triple c1,c2,c3")->required();
  measures_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* classify_cmd = app.add_subcommand("classify", "Physicality/separability/classicality");
  classify_cmd->add_option("--c", triple, "State triple c1,c2,c3")->required();

  std::string channel = "phase";
  double gamma = 1.0;
  double t_max = 3.0;
  int steps = 61;
  auto* traj_cmd = app.add_subcommand("trajectory", "Exact flip-channel trajectory and events");
  traj_cmd->add_option("--initial", triple, "Initial state c1,c2,c3")->required();
  traj_cmd->add_option("--channel", channel)->check(CLI::IsMember({"phase", "bit", "bitphase"}));
  traj_cmd->add_option("--gamma", gamma)->check(CLI::PositiveNumber);
  traj_cmd->add_option("--t-max", t_max)->check(CLI::PositiveNumber);
  traj_cmd->add_option("--steps", steps)->check(CLI::Range(2, 1000000));
  traj_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string field_name = "discord";
  double level = 0.15;
  int resolution = 129;
  double refine_tol = 1e-8;
  std::string out_path;
  std::string mesh_format = "obj";
  auto* iso_cmd = app.add_subcommand("isosurface", "Extract a level surface as a mesh");
  iso_cmd->add_option("--field", field_name)->required();
  iso_cmd->add_option("--level", level)->required();
  iso_cmd->add_option("--resolution", resolution)->check(CLI::Range(9, 2001));
  iso_cmd->add_option("--refine-tol", refine_tol)->check(CLI::Range(1e-10, 1.0));
  iso_cmd->add_option("--out", out_path, "Mesh output path")->required();
  iso_cmd->add_option("--format", mesh_format)->check(CLI::IsMember({"obj", "csv"}));

  int random_count = 0;
  std::uint64_t seed = 0;
  int grid = 512;
  bool refine = true;
  auto* oracle_cmd =
      app.add_subcommand("verify-oracle", "Compare measurement minimization to the closed form");
  auto* oracle_c = oracle_cmd->add_option("--c", triple, "State triple c1,c2,c3");
  auto* oracle_random = oracle_cmd->add_option("--random", random_count, "Number of random states")
                            ->check(CLI::Range(1, 1000000));
  oracle_cmd->add_option("--seed", seed);
  oracle_cmd->add_option("--grid", grid)->check(CLI::Range(8, 1000000));
  oracle_cmd->add_flag("--refine,!--no-refine", refine);
  oracle_c->excludes(oracle_random);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (measures_cmd->parsed()) return cmd_measures(triple, format);
    if (classify_cmd->parsed()) return cmd_classify(triple);
    if (traj_cmd->parsed())
      return cmd_trajectory(triple, channel, gamma, t_max, steps, format);
    if (iso_cmd->parsed())
      return cmd_isosurface(field_name, level, resolution, refine_tol, out_path, mesh_format);
    if (oracle_cmd->parsed()) {
      if (!*oracle_c && random_count <= 0) {
        std::cerr << "error: verify-oracle needs --c or --random N\n";
        return kExitUsage;
      }
      return cmd_verify_oracle(*oracle_c ? std::optional<std::string>(triple) : std::nullopt,
                               random_count, seed, grid, refine);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
