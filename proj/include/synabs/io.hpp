#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "synabs/abstraction.hpp"
#include "synabs/log.hpp"
#include "synabs/tree.hpp"

namespace synabs {

class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

// header case,activity[,timestamp][,attr:*]; rows grouped by case, ordered by
// timestamp when present, else by file order
EventLog read_csv(std::istream& in, bool attribute_identity = false);
void write_csv(std::ostream& out, const EventLog& log);

// one trace per line, "[xN ]a,b,c"; "<>" is the empty trace; '#' starts a comment
EventLog read_compact(std::istream& in);
void write_compact(std::ostream& out, const EventLog& log);

// chooses the format by extension: .csv, anything else compact
EventLog read_log_file(const std::string& path, bool attribute_identity = false);
void write_log_file(const std::string& path, const EventLog& log);

ProcessTree read_tree_file(const std::string& path);

// {"AB": ["CBW", "CD"], ..., "w_t": "1/2"}
AggSpec parse_agg_spec(const std::string& json_text);
std::string agg_spec_to_json(const AggSpec& spec);
AggSpec read_agg_spec_file(const std::string& path);

}  // namespace synabs
