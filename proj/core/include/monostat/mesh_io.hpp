#pragma once

#include <filesystem>
#include <string>

#include "monostat/trimesh.hpp"

namespace monostat {

enum class MeshFormat { Obj, StlAscii, StlBinary };

MeshFormat mesh_format_from_name(const std::string& name);

/// OBJ keeps full double precision; STL stores 32-bit floats per its layout
/// (80-byte header, little-endian triangles). Round-tripping preserves
/// vertex coordinates to 1e-6 and face topology.
void export_mesh(const TriMesh& mesh, MeshFormat format, const std::filesystem::path& path);

/// Format detected from contents (binary STL) and extension/first token.
/// Malformed input raises std::runtime_error naming the line or byte offset.
TriMesh import_mesh(const std::filesystem::path& path);

}  // namespace monostat
