#pragma once

#include <string>
#include <string_view>

#include "cbfl/domain.hpp"

// Line-oriented text records for txs and blocks. Doubles use the shortest
// round-trip representation, so parse(serialize(x)) == x bit for bit.
namespace cbfl {

// tx <id> <n_samples> <created_at> <digest hex> <dim> <w_1..w_dim> <g_1..g_dim>
std::string serialize_tx(const LocalUpdateTx& tx);
LocalUpdateTx parse_tx(std::string_view line);

// block <sealed_at> <header_bits> <tx_bits> <count>, then one tx line per tx.
std::string serialize_block(const Block& block);
Block parse_block(std::string_view text);

}  // namespace cbfl
