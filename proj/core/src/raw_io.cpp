#include "hibound/raw_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "hibound/error.hpp"

namespace hibound {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size < 0) fail(ErrorCode::io, "cannot size " + path.string());
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  if (!bytes.empty() && !in.read(reinterpret_cast<char*>(bytes.data()), size)) {
    fail(ErrorCode::io, "short read on " + path.string());
  }
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::io, "short write on " + path.string());
}

namespace {

template <class T>
void swap_if_big_endian(T& value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto* raw = reinterpret_cast<std::uint8_t*>(&value);
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(raw[i], raw[sizeof(T) - 1 - i]);
  }
}

}  // namespace

template <class T>
Field<T> field_from_bytes(std::span<const std::uint8_t> bytes, const Dims& dims) {
  if (bytes.size() != dims.count() * sizeof(T)) {
    fail(ErrorCode::dimension_mismatch,
         "raw data holds " + std::to_string(bytes.size()) + " bytes, dims require " +
             std::to_string(dims.count() * sizeof(T)));
  }
  std::vector<T> values(dims.count());
  std::memcpy(values.data(), bytes.data(), bytes.size());
  for (auto& v : values) swap_if_big_endian(v);
  return Field<T>(dims, std::move(values));
}

template Field<float> field_from_bytes<float>(std::span<const std::uint8_t>, const Dims&);
template Field<double> field_from_bytes<double>(std::span<const std::uint8_t>, const Dims&);

template <class T>
std::vector<std::uint8_t> field_to_bytes(const Field<T>& field) {
  std::vector<std::uint8_t> bytes(field.byte_size());
  std::memcpy(bytes.data(), field.values().data(), bytes.size());
  if constexpr (std::endian::native == std::endian::big) {
    auto* words = reinterpret_cast<T*>(bytes.data());
    for (std::size_t i = 0; i < field.size(); ++i) swap_if_big_endian(words[i]);
  }
  return bytes;
}

template std::vector<std::uint8_t> field_to_bytes<float>(const Field<float>&);
template std::vector<std::uint8_t> field_to_bytes<double>(const Field<double>&);

AnyField read_raw(const std::filesystem::path& path, const Dims& dims, Precision precision) {
  const auto bytes = read_file(path);
  if (precision == Precision::f32) return field_from_bytes<float>(bytes, dims);
  return field_from_bytes<double>(bytes, dims);
}

void write_raw(const std::filesystem::path& path, const AnyField& field) {
  std::visit([&](const auto& f) { write_file(path, field_to_bytes(f)); }, field);
}

}  // namespace hibound
