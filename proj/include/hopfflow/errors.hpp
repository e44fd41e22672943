#pragma once

#include <stdexcept>
#include <string>

namespace hopfflow {

#define HOPFFLOW_ERROR(Name, Base)   \
  class Name : public std::Base {    \
   public:                           \
    using std::Base::Base;           \
  }

HOPFFLOW_ERROR(WrongConstantTerm, domain_error);
HOPFFLOW_ERROR(SideMismatch, invalid_argument);
HOPFFLOW_ERROR(DegreeOutOfRange, out_of_range);
HOPFFLOW_ERROR(NotLie, invalid_argument);
HOPFFLOW_ERROR(ShapeMismatch, invalid_argument);
HOPFFLOW_ERROR(EmptyGrid, invalid_argument);
HOPFFLOW_ERROR(DomainError, domain_error);
HOPFFLOW_ERROR(NotFiltered, domain_error);
HOPFFLOW_ERROR(NonCommutativeCarrier, invalid_argument);
HOPFFLOW_ERROR(ThetaZero, domain_error);
HOPFFLOW_ERROR(NonzeroWeight, domain_error);
HOPFFLOW_ERROR(QuadratureBudgetExceeded, runtime_error);
HOPFFLOW_ERROR(IndexError, out_of_range);
HOPFFLOW_ERROR(DegenerateTriple, domain_error);
HOPFFLOW_ERROR(NotASolution, invalid_argument);
HOPFFLOW_ERROR(UsageError, invalid_argument);

#undef HOPFFLOW_ERROR

// Integrator refused a step; carries the time at which it happened.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

class BlowUp : public std::runtime_error {
 public:
  BlowUp(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double escape_time() const { return t_; }

 private:
  double t_;
};

class PoleCrossing : public std::runtime_error {
 public:
  PoleCrossing(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double crossing_time() const { return t_; }

 private:
  double t_;
};

}  // namespace hopfflow
