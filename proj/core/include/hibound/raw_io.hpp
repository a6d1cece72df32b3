#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hibound/field.hpp"

namespace hibound {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Loads a little-endian raw array. The file size must match dims exactly.
AnyField read_raw(const std::filesystem::path& path, const Dims& dims, Precision precision);

template <class T>
Field<T> field_from_bytes(std::span<const std::uint8_t> bytes, const Dims& dims);

template <class T>
std::vector<std::uint8_t> field_to_bytes(const Field<T>& field);

void write_raw(const std::filesystem::path& path, const AnyField& field);

}  // namespace hibound
