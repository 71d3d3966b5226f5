#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hecke/b_involution.hpp"

namespace hecke {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plain text, keyword-led blocks:
//   degree <n>
//   <re> <im>            n + 1 coefficient lines, ascending degree
//   boundary <m>
//   <re> <im>            m vertex lines, counter-clockwise
//   pinch <k>
//   <re> <im>            k lines
//   tol <value>
// Lines starting with '#' are comments.
BInvolutionData read_instance(std::istream& in);
BInvolutionData read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const BInvolutionData& data, const std::string& comment = {});
void write_instance_file(const std::string& path, const BInvolutionData& data, const std::string& comment = {});

// One "re im" coefficient per line, ascending degree.
Polynomial read_polynomial_file(const std::string& path);

}  // namespace hecke
