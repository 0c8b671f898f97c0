#pragma once

#include <iosfwd>
#include <string>

#include "autoseq/automaton.hpp"

namespace autoseq {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

/// Line-oriented automaton text format.  '#' starts a comment; the header
/// line `reading: lsd-first` is mandatory.
Automaton parse_automaton(std::istream& in);
Automaton parse_automaton_file(const std::string& path);
Automaton parse_automaton_string(const std::string& text);

std::string emit_automaton(const Automaton& a);
void write_automaton_file(const Automaton& a, const std::string& path);

}  // namespace autoseq
