#include "cbfl/serialize.hpp"

#include <charconv>

#include "cbfl/text.hpp"

namespace cbfl {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  auto res = std::to_chars(buf, buf + sizeof buf, v, 16);
  return std::string(buf, res.ptr);
}

std::uint64_t parse_hex64(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(line, "bad digest '" + std::string(s) + "'");
  }
  return v;
}

double need_double(std::string_view s, std::size_t line) {
  auto v = text::parse_double(s);
  if (!v) throw ParseError(line, "bad number '" + std::string(s) + "'");
  return *v;
}

std::uint64_t need_u64(std::string_view s, std::size_t line) {
  auto v = text::parse_u64(s);
  if (!v) throw ParseError(line, "bad count '" + std::string(s) + "'");
  return *v;
}

LocalUpdateTx parse_tx_at(std::string_view line, std::size_t line_no) {
  const auto tok = text::split_ws(line);
  if (tok.size() < 6 || tok[0] != "tx") throw ParseError(line_no, "expected tx record");
  LocalUpdateTx tx;
  const auto id = need_u64(tok[1], line_no);
  if (id > 0xffffffffu) throw ParseError(line_no, "enterprise id out of range");
  tx.enterprise_id = static_cast<std::uint32_t>(id);
  tx.n_samples = need_u64(tok[2], line_no);
  tx.created_at = need_double(tok[3], line_no);
  tx.digest = parse_hex64(tok[4], line_no);
  const auto dim = need_u64(tok[5], line_no);
  if (tok.size() != 6 + 2 * dim) throw ParseError(line_no, "tx vector length mismatch");
  tx.weights.reserve(dim);
  tx.shared_gradient.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) tx.weights.push_back(need_double(tok[6 + i], line_no));
  for (std::size_t i = 0; i < dim; ++i) {
    tx.shared_gradient.push_back(need_double(tok[6 + dim + i], line_no));
  }
  return tx;
}

}  // namespace

std::string serialize_tx(const LocalUpdateTx& tx) {
  std::string out = "tx ";
  out += std::to_string(tx.enterprise_id);
  out += ' ';
  out += std::to_string(tx.n_samples);
  out += ' ';
  out += text::shortest(tx.created_at);
  out += ' ';
  out += hex64(tx.digest);
  out += ' ';
  out += std::to_string(tx.weights.size());
  for (double w : tx.weights) {
    out += ' ';
    out += text::shortest(w);
  }
  for (double g : tx.shared_gradient) {
    out += ' ';
    out += text::shortest(g);
  }
  return out;
}

LocalUpdateTx parse_tx(std::string_view line) { return parse_tx_at(line, 1); }

std::string serialize_block(const Block& block) {
  std::string out = "block ";
  out += text::shortest(block.sealed_at());
  out += ' ';
  out += text::shortest(block.header_bits());
  out += ' ';
  out += text::shortest(block.tx_bits());
  out += ' ';
  out += std::to_string(block.size());
  out += '\n';
  for (const auto& tx : block.txs()) {
    out += serialize_tx(tx);
    out += '\n';
  }
  return out;
}

Block parse_block(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  if (lines.empty()) throw ParseError(1, "empty block record");
  const auto head = text::split_ws(lines[0]);
  if (head.size() != 5 || head[0] != "block") throw ParseError(1, "expected block header");
  const double sealed_at = need_double(head[1], 1);
  const double header_bits = need_double(head[2], 1);
  const double tx_bits = need_double(head[3], 1);
  const auto count = need_u64(head[4], 1);
  if (lines.size() < count + 1) throw ParseError(lines.size(), "block truncated");
  std::vector<LocalUpdateTx> txs;
  txs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) txs.push_back(parse_tx_at(lines[i + 1], i + 2));
  return Block(std::move(txs), sealed_at, header_bits, tx_bits);
}

}  // namespace cbfl
