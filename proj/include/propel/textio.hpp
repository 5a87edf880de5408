#pragma once

// Plain-text file formats shared by the CLI and golden files.
//
//   matrix:      "q rows cols", then one row per line, entries space-separated
//   permutation: "q r", then q^r space-separated image indices on one line
//   subgroup:    "q r", then q^r lines of r*r entries; line k is M at idx k
//   codewords:   "# q r N tau=<label>", then one word per line as N digits (q <= 9)
//   certificate: JSON {"q", "length", "entries": [{"codeword", "sigma", "pis"}]}

#include "propel/affinegroups.hpp"
#include "propel/fqlinalg.hpp"
#include "propel/mollard.hpp"
#include "propel/verifier.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace propel {

/// Malformed input; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

void write_matrix(std::ostream& out, const FqMatrix& m);
FqMatrix read_matrix(std::istream& in);

void write_perm(std::ostream& out, const PermTable& tau);
PermTable read_perm(std::istream& in);

void write_subgroup(std::ostream& out, const RegularSubgroup& group);
RegularSubgroup read_subgroup(std::istream& in);

/// Streams every codeword of `code`; throws std::invalid_argument for q > 9.
void write_codewords(std::ostream& out, const CodeHandle& code, const std::string& tau_label,
                     std::uint64_t max_codewords = kMaxCodewords);

void write_certificate(std::ostream& out, const PropelinearCertificate& cert, unsigned q);
PropelinearCertificate read_certificate(std::istream& in, unsigned q);

/// Reads a whole file, throwing std::runtime_error naming the path on failure.
std::string read_file(const std::string& path);

}  // namespace propel
