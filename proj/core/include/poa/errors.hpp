#pragma once

#include <stdexcept>
#include <string>

namespace poa {

// Base class for everything this library throws on contract violations.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- metric / measure construction ---
struct InvalidMetric : Error { using Error::Error; };
struct InvalidGraph : Error { using Error::Error; };
struct NonPositiveWeight : Error { using Error::Error; };
struct DisconnectedGraph : Error { using Error::Error; };
struct AllZeroMass : Error { using Error::Error; };
struct NegativeMass : Error { using Error::Error; };
struct InvalidMeasure : Error { using Error::Error; };

// --- observable algebra ---
struct LengthMismatch : Error { using Error::Error; };
struct NotCentered : Error {
  NotCentered(const std::string& what, double mean) : Error(what), offending_mean(mean) {}
  double offending_mean;
};
struct ModeMismatch : Error { using Error::Error; };

// --- solver ---
struct LpInfeasible : Error { using Error::Error; };
struct LpUnbounded : Error { using Error::Error; };
struct DegenerateVariance : Error {
  DegenerateVariance(const std::string& what, double variance) : Error(what), best_variance(variance) {}
  double best_variance;
};
struct TooLarge : Error { using Error::Error; };
struct InternalSolverError : Error { using Error::Error; };

// --- embedding / signals ---
struct NotEnoughObservables : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct ZeroNormObservable : Error { using Error::Error; };

// --- extension / stability ---
struct EmptySample : Error { using Error::Error; };
struct UncertifiedObservable : Error { using Error::Error; };
struct MissingDistance : Error { using Error::Error; };
struct NotSurjective : Error { using Error::Error; };

// --- file interfaces ---
struct ParseError : Error {
  ParseError(const std::string& what, int line) : Error(what), line_number(line) {}
  int line_number;
};
struct ValidationError : Error { using Error::Error; };

}  // namespace poa
