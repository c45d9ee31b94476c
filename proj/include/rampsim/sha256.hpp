#ifndef RAMPSIM_SHA256_HPP
#define RAMPSIM_SHA256_HPP

#include <string>
#include <string_view>

namespace rampsim {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

}  // namespace rampsim

#endif
