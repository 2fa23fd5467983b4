#ifndef CUTOFF_CHANNEL_IO_HPP
#define CUTOFF_CHANNEL_IO_HPP

#include "cutoff/dmc.hpp"

#include <optional>
#include <string>

namespace cutoff::dmc {

// Channel file schema:
//   { "transition": [[...], ...], "cost": [...], "budget": x }
// "cost" and "budget" are optional but must appear together.  Validation
// failures throw std::invalid_argument with a message naming the violated
// invariant (e.g. "row 1 sums to 0.97").
struct ChannelFile {
    Dmc channel;
    std::optional<CostSpec> cost;
};

ChannelFile load_channel_json(const std::string& path);
ChannelFile parse_channel_json(const std::string& text);
std::string channel_to_json(const Dmc& w, const std::optional<CostSpec>& cost);

} // namespace cutoff::dmc

#endif
