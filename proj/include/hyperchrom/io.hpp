#pragma once

#include "hyperchrom/bundles.hpp"
#include "hyperchrom/cuts.hpp"
#include "hyperchrom/hypergraph.hpp"
#include "hyperchrom/kneserlab.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace hyperchrom {

// Text formats. Writers are canonical (sorted, one trailing newline per
// line) so write -> read -> write is byte-identical. Readers throw
// ParseError with the offending line number.

// nhg 1 / <n> <m> / one ascending edge per line.
std::string write_nhg(const Hypergraph& h);
Hypergraph read_nhg(std::istream& in);

// <vertex> <label> per line.
std::string write_labels(const LabelTable& labels);
LabelTable read_labels(std::istream& in, std::size_t n);

// nfb 1 / <|F|> <r_gamma> / inline nhg block (or "@<path>") / per base
// vertex "<v> <count>" followed by its sorted fiber edges.
std::string write_nfb(const FiberBundle& b);
FiberBundle read_nfb(std::istream& in, const std::filesystem::path& base_dir = {});

// nsf 1 / <n> <count> / one member per line as ascending indices.
std::string write_nsf(const SetFamily& fam);
SetFamily read_nsf(std::istream& in);

// "X" plus the vertices of X, then "S u v" per pair.
std::string write_cut(const Cut& cut);
Cut read_cut(std::istream& in);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);
Hypergraph load_nhg(const std::filesystem::path& path);
FiberBundle load_nfb(const std::filesystem::path& path);
SetFamily load_nsf(const std::filesystem::path& path);

} // namespace hyperchrom
