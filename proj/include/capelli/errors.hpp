#pragma once

#include <stdexcept>
#include <string>

namespace capelli {

/// Text input that does not match the polynomial / rational grammar.
class parse_error : public std::runtime_error {
  public:
	parse_error(const std::string &what, std::size_t position)
	    : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
	      position_(position)
	{}

	std::size_t position() const { return position_; }

  private:
	std::size_t position_;
};

/// Factorization could not be completed within the configured trial bound.
/// Raised instead of ever returning an unverified or probabilistic answer.
class factor_bound_error : public std::runtime_error {
  public:
	explicit factor_bound_error(const std::string &what) : std::runtime_error(what) {}
};

} // namespace capelli
