#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace maplines::cli {

/// Entry point of the maplines command. `args` excludes the program name.
/// Returns the process exit code; diagnostics go to `err`.
///
///   maplines decompose IN --out DIR
///   maplines extract   IN --out DIR [--dump-stages]
///   maplines recognize IN --out DIR [--dump-stages]
///   maplines synth     --config FILE --out DIR
///   maplines check     [--max-size N] [--random N --size S] [--scenes N]
///   maplines bench     [--sizes 256,1024] [--lines 10,200] [--runs 5]
///
/// Common flags: --config FILE (text config or a previous manifest.json),
/// --fan-variant union|intersection, --seed N, --layer NAME (color input
/// separated by the config's color classes).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Header line of planes.bin; it is followed by width*height bytes whose
/// bit d marks membership in plane d.
std::string planes_header(int width, int height);

}  // namespace maplines::cli
