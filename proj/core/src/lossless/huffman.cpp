#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

#include "hibound/error.hpp"
#include "hibound/lossless/stages.hpp"

namespace hibound::lossless {

namespace {

std::array<std::uint8_t, 256> unlimited_lengths(const std::array<std::uint64_t, 256>& freq) {
  struct Node {
    std::uint64_t weight;
    int left, right;
  };
  std::vector<Node> nodes;
  using Entry = std::pair<std::uint64_t, int>;  // (weight, node id); ids break ties
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int s = 0; s < 256; ++s) {
    if (freq[static_cast<std::size_t>(s)] == 0) continue;
    heap.emplace(freq[static_cast<std::size_t>(s)], static_cast<int>(nodes.size()));
    nodes.push_back({freq[static_cast<std::size_t>(s)], -1, s});
  }
  while (heap.size() > 1) {
    const auto a = heap.top();
    heap.pop();
    const auto b = heap.top();
    heap.pop();
    heap.emplace(a.first + b.first, static_cast<int>(nodes.size()));
    nodes.push_back({a.first + b.first, a.second, b.second});
  }

  std::array<std::uint8_t, 256> lengths{};
  std::vector<std::pair<int, int>> stack{{heap.top().second, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    const Node& node = nodes[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      lengths[static_cast<std::size_t>(node.right)] = static_cast<std::uint8_t>(std::min(depth, 255));
    } else {
      stack.emplace_back(node.left, depth + 1);
      stack.emplace_back(node.right, depth + 1);
    }
  }
  return lengths;
}

struct CanonicalCode {
  std::array<std::uint32_t, 256> code{};
  std::array<std::uint8_t, 256> length{};
};

CanonicalCode canonical(const std::array<std::uint8_t, 256>& lengths) {
  std::vector<std::pair<int, int>> order;
  for (int s = 0; s < 256; ++s) {
    if (lengths[static_cast<std::size_t>(s)]) order.emplace_back(lengths[static_cast<std::size_t>(s)], s);
  }
  std::sort(order.begin(), order.end());
  CanonicalCode c;
  c.length = lengths;
  std::uint32_t code = 0;
  int prev = order.empty() ? 0 : order.front().first;
  for (const auto& [len, sym] : order) {
    code <<= (len - prev);
    prev = len;
    c.code[static_cast<std::size_t>(sym)] = code++;
  }
  return c;
}

constexpr std::size_t kLengthTableSize = 256;

}  // namespace

std::array<std::uint8_t, 256> huffman_code_lengths(const std::array<std::uint64_t, 256>& histogram) {
  std::array<std::uint64_t, 256> freq = histogram;
  const auto used = std::count_if(freq.begin(), freq.end(), [](std::uint64_t f) { return f > 0; });
  std::array<std::uint8_t, 256> lengths{};
  if (used == 0) return lengths;
  if (used == 1) {
    for (std::size_t s = 0; s < 256; ++s) lengths[s] = freq[s] ? 1 : 0;
    return lengths;
  }
  for (;;) {
    lengths = unlimited_lengths(freq);
    if (*std::max_element(lengths.begin(), lengths.end()) <= kMaxHuffmanCodeLength) return lengths;
    // Flatten the distribution and retry until the longest code fits.
    for (auto& f : freq) {
      if (f) f = (f + 1) / 2;
    }
  }
}

std::vector<std::uint8_t> huffman_encode(std::span<const std::uint8_t> input) {
  std::array<std::uint64_t, 256> histogram{};
  for (auto b : input) ++histogram[b];
  const auto lengths = huffman_code_lengths(histogram);
  const CanonicalCode code = canonical(lengths);

  std::uint64_t bit_count = 0;
  for (std::size_t s = 0; s < 256; ++s) bit_count += histogram[s] * lengths[s];

  ByteWriter out(StageHeader::kSize + kLengthTableSize + 8 + static_cast<std::size_t>((bit_count + 7) / 8));
  StageHeader{StageId::huffman, 1, input.size()}.write(out);
  out.put_bytes(lengths);
  out.put(bit_count);

  auto& buf = out.buffer();
  std::uint64_t acc = 0;
  int filled = 0;
  for (auto b : input) {
    acc = (acc << code.length[b]) | code.code[b];
    filled += code.length[b];
    while (filled >= 8) {
      filled -= 8;
      buf.push_back(static_cast<std::uint8_t>(acc >> filled));
    }
  }
  if (filled > 0) buf.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
  return std::move(out).take();
}

std::vector<std::uint8_t> huffman_decode(std::span<const std::uint8_t> encoded) {
  ByteReader in(encoded);
  const StageHeader h = StageHeader::read(in);
  if (h.id != StageId::huffman) fail(ErrorCode::corrupt_archive, "not a Huffman stage");
  const auto table = in.get_bytes(kLengthTableSize, "Huffman length table");
  const auto bit_count = in.get<std::uint64_t>("Huffman bit count");
  if ((bit_count + 7) / 8 != in.remaining()) fail(ErrorCode::corrupt_archive, "Huffman payload length mismatch");
  if (h.original_length > bit_count) fail(ErrorCode::corrupt_archive, "Huffman symbol count exceeds bit count");
  const auto payload = in.get_bytes(in.remaining(), "Huffman payload");

  std::array<std::uint8_t, 256> lengths{};
  std::uint64_t kraft = 0;
  int used = 0;
  for (std::size_t s = 0; s < 256; ++s) {
    lengths[s] = table[s];
    if (lengths[s] > kMaxHuffmanCodeLength) fail(ErrorCode::corrupt_archive, "Huffman code length too long");
    if (lengths[s]) {
      kraft += std::uint64_t{1} << (kMaxHuffmanCodeLength - lengths[s]);
      ++used;
    }
  }
  if (kraft > (std::uint64_t{1} << kMaxHuffmanCodeLength)) {
    fail(ErrorCode::corrupt_archive, "Huffman length table violates the Kraft inequality");
  }
  if (h.original_length > 0 && used == 0) fail(ErrorCode::corrupt_archive, "empty Huffman length table");

  const CanonicalCode code = canonical(lengths);
  constexpr int kBits = kMaxHuffmanCodeLength;
  std::vector<std::uint16_t> lookup(std::size_t{1} << kBits, 0);
  for (std::size_t s = 0; s < 256; ++s) {
    const int len = lengths[s];
    if (!len) continue;
    const std::size_t first = static_cast<std::size_t>(code.code[s]) << (kBits - len);
    const std::size_t last = first + (std::size_t{1} << (kBits - len));
    std::fill(lookup.begin() + static_cast<std::ptrdiff_t>(first), lookup.begin() + static_cast<std::ptrdiff_t>(last),
              static_cast<std::uint16_t>((len << 8) | static_cast<int>(s)));
  }

  std::vector<std::uint8_t> out(static_cast<std::size_t>(h.original_length));
  const std::size_t nbytes = payload.size();
  std::uint64_t pos = 0;
  auto byte_at = [&](std::size_t i) -> std::uint32_t { return i < nbytes ? payload[i] : 0u; };
  for (auto& symbol : out) {
    const std::size_t at = static_cast<std::size_t>(pos >> 3);
    const std::uint32_t window = (byte_at(at) << 16) | (byte_at(at + 1) << 8) | byte_at(at + 2);
    const std::uint32_t peek = (window >> (8 - (pos & 7))) & 0xFFFFu;
    const std::uint16_t entry = lookup[peek];
    if (entry == 0) fail(ErrorCode::corrupt_archive, "invalid Huffman code in payload");
    pos += entry >> 8;
    if (pos > bit_count) fail(ErrorCode::corrupt_archive, "Huffman payload overrun");
    symbol = static_cast<std::uint8_t>(entry & 0xFFu);
  }
  if (pos != bit_count) fail(ErrorCode::corrupt_archive, "Huffman bit count mismatch");
  return out;
}

}  // namespace hibound::lossless
