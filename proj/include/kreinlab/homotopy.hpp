#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kreinlab/realsym.hpp"
#include "kreinlab/signature.hpp"

namespace kreinlab {

/// A continuous family t in [t_begin, t_end] of J-unitaries or J-hermitians.
struct OperatorPath {
  std::string name;
  std::function<Mat(double)> sampler;
  KreinStructure K;
  std::optional<RealStructure> R;
  OperatorKind kind = OperatorKind::Hermitian;
  double t_begin = 0.0;
  double t_end = 1.0;

  Mat at(double t) const { return sampler(t); }
};

/// Piecewise-linear interpolation of stored samples (ts strictly increasing).
OperatorPath interpolated_path(std::string name, std::vector<double> ts, std::vector<Mat> samples,
                               const KreinStructure& K, std::optional<RealStructure> R, OperatorKind kind);

/// The same path run backwards: s -> at(t_begin + t_end - s).
OperatorPath reversed(const OperatorPath& p);

/// Largest Krein and Real membership residual over `samples` equispaced points.
double path_membership_residual(const OperatorPath& p, int samples);

struct TrackSample {
  double t = 0.0;
  cplx value;
  bool on_boundary = false;
  bool inertia_defined = false;
  InertiaPair nu;     // inertia of the on-boundary cluster containing the value
  int cluster_size = 1;
};

struct Trajectory {
  int id = 0;
  std::vector<TrackSample> samples;
  double continuity_bound = 0.0;  // largest accepted jump relative to the neighbour distance
};

struct TrackResult {
  std::vector<double> ts;
  std::vector<Trajectory> tracks;  // samples aligned with ts
  int bisections = 0;
  std::vector<std::pair<double, cplx>> collisions;  // (t, centre) of groups accepted at the minimum step
};

/// Minimal-cost assignment: result[i] is the column assigned to row i.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

/// Tracks the spectrum with adaptive bisection. Throws StepUnderflow with the bracket.
TrackResult track(const OperatorPath& p, int initial_grid, const ToleranceConfig& tol = {});

enum class EventKind { KC, QKC, TB, MTB, PD, MPD, PassThrough };
const char* event_name(EventKind k);
EventKind parse_event(const std::string& s);

enum class Direction { Departure, Arrival, Along };
const char* direction_name(Direction d);

struct BifurcationEvent {
  EventKind kind = EventKind::KC;
  Direction direction = Direction::Departure;
  double t0 = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  cplx lambda0;
  int multiplicity = 0;
  InertiaPair inertia_before;
  InertiaPair inertia_after;
  bool inertia_defined = true;
};

/// Collisions from status changes of the tracks, located by bisection to tol.event_bracket.
/// Throws UnresolvedEvent when the bracket cannot be narrowed.
std::vector<BifurcationEvent> detect_events(const TrackResult& tr, const OperatorPath& p,
                                            const ToleranceConfig& tol = {});

struct StabilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Every departure must start from an indefinite on-boundary group.
StabilityReport verify_krein_stability(const std::vector<BifurcationEvent>& events);

/// CSV with columns t,track_id,re,im,nu_plus,nu_minus,region.
void write_csv(std::ostream& os, const TrackResult& tr, OperatorKind kind);

struct ExpectedEvent {
  EventKind kind;
  double t0;
  cplx lambda0;
  int multiplicity;
};

struct Scenario {
  OperatorPath path;
  std::vector<ExpectedEvent> expected;
  std::string group;
};

struct ScenarioParams {
  int sigma = 1;          // finex
  int sigma_prime = 1;    // finex
  double lambda0 = 0.5;   // qkc collision point on the axis before the Cayley map
};

/// finex, kc2x2, qkc, tb, mtb, pd, mpd, plus kc2x2h (hermitian kind (1,-1) form of kc2x2).
/// Throws UnknownScenario.
Scenario scenario_library(const std::string& name, const ScenarioParams& params = {});
std::vector<std::string> scenario_names();

/// t -> exp(i((1-t) H0 + t H1)) with random members H0, H1 (the hermitian kind interpolates H
/// directly). R may be null for the plain Krein class.
OperatorPath random_member_path(const KreinStructure& K, const RealStructure* R, OperatorKind kind,
                                std::uint64_t seed, double scale = 1.0);

}  // namespace kreinlab
