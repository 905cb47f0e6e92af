#pragma once

#include "hbb/heegner.hpp"

#include <string>
#include <vector>

namespace hbb {

// Lattice file: "key: value" lines, '#' comments.
//   name: <text>
//   blocks: <standard block list, e.g. U+U+E8(-1)>   (optional)
//   gram: <n>
//   <n rows of n integers>
// A file with blocks but no gram is expanded from the block list.
EvenLattice parse_lattice(const std::string& text);
std::string format_lattice(const EvenLattice& M);
EvenLattice read_lattice_file(const std::string& path);

// q-expansion file:
//   group=<d1,d2,..|1> dual=<0|1> k=<n>/<d> prec=<n>/<d>
//   #form q=<q1,q2,..> b=<row-major bilinear values>
//   <coords> ; <m num>/<m den> ; cyc:<L>:<c_0,c_1,...>      (or a float pair "re,im")
// Lines sorted by element index (= lexicographic coordinates), then m.
std::string format_qexp(const FourierExpansion& f, bool exact = true);
FourierExpansion parse_qexp(const std::string& text);

// Decomposition JSON: {"decompositions": [{"P": [[..]], "N1": 1, "N2": 1} | {"standard": true}]}
std::vector<AdmissibleDecomposition> parse_decompositions(const EvenLattice& M, const std::string& json_text);
std::string format_decomposition(const AdmissibleDecomposition& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
// FNV-1a 64-bit digest, hex
std::string digest(const std::string& text);

}  // namespace hbb
