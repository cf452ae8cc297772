#pragma once

#include <stdexcept>
#include <string>

namespace homsense {

/// A constructor or certifier precondition on the eigenstructure is not met.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The characteristic polynomial does not split over Q.
class RationalSpectrumError : public HypothesisError {
 public:
  RationalSpectrumError() : HypothesisError("rational spectrum required") {}
};

}  // namespace homsense
