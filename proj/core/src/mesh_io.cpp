#include "monostat/mesh_io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace monostat {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

Vec3 face_normal(const TriMesh& mesh, const std::array<std::int32_t, 3>& f) {
    const Vec3 n = cross(mesh.vertices[f[1]] - mesh.vertices[f[0]],
                         mesh.vertices[f[2]] - mesh.vertices[f[0]]);
    const double len = norm(n);
    return len > 0.0 ? n / len : Vec3{0.0, 0.0, 0.0};
}

void write_obj(const TriMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

TriMesh read_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    TriMesh mesh;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ss >> v.x >> v.y >> v.z)) parse_fail(path, lineno, "malformed vertex record");
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<std::int32_t, 3> f{};
            for (int i = 0; i < 3; ++i) {
                std::string field;
                if (!(ss >> field)) parse_fail(path, lineno, "face needs three indices");
                // Accept v, v/vt, v/vt/vn, v//vn forms; only the vertex index is used.
                long idx = 0;
                try {
                    idx = std::stol(field.substr(0, field.find('/')));
                } catch (const std::exception&) {
                    parse_fail(path, lineno, "bad face index '" + field + "'");
                }
                if (idx < 0) idx = static_cast<long>(mesh.vertices.size()) + idx + 1;
                if (idx < 1 || idx > static_cast<long>(mesh.vertices.size()))
                    parse_fail(path, lineno, "face index " + std::to_string(idx) + " out of range");
                f[i] = static_cast<std::int32_t>(idx - 1);
            }
            std::string extra;
            if (ss >> extra) parse_fail(path, lineno, "only triangular faces are supported");
            mesh.faces.push_back(f);
        }
        // Other records (vn, vt, o, g, s, usemtl, ...) are ignored.
    }
    if (mesh.vertices.empty() || mesh.faces.empty())
        parse_fail(path, lineno, "no geometry found");
    return mesh;
}

void write_stl_ascii(const TriMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "solid monostat\n";
    char buf[256];
    for (const auto& f : mesh.faces) {
        const Vec3 n = face_normal(mesh, f);
        std::snprintf(buf, sizeof buf, "  facet normal %.9g %.9g %.9g\n    outer loop\n",
                      n.x, n.y, n.z);
        out << buf;
        for (int i = 0; i < 3; ++i) {
            const Vec3& v = mesh.vertices[f[i]];
            std::snprintf(buf, sizeof buf, "      vertex %.9g %.9g %.9g\n", v.x, v.y, v.z);
            out << buf;
        }
        out << "    endloop\n  endfacet\n";
    }
    out << "endsolid monostat\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_stl_binary(const TriMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    char header[80] = {};
    std::strncpy(header, "monostat binary STL", sizeof header - 1);
    out.write(header, 80);
    const auto count = static_cast<std::uint32_t>(mesh.faces.size());
    out.write(reinterpret_cast<const char*>(&count), 4);
    for (const auto& f : mesh.faces) {
        float rec[12];
        const Vec3 n = face_normal(mesh, f);
        rec[0] = static_cast<float>(n.x);
        rec[1] = static_cast<float>(n.y);
        rec[2] = static_cast<float>(n.z);
        for (int i = 0; i < 3; ++i) {
            const Vec3& v = mesh.vertices[f[i]];
            rec[3 * i + 3] = static_cast<float>(v.x);
            rec[3 * i + 4] = static_cast<float>(v.y);
            rec[3 * i + 5] = static_cast<float>(v.z);
        }
        out.write(reinterpret_cast<const char*>(rec), 48);
        const std::uint16_t attr = 0;
        out.write(reinterpret_cast<const char*>(&attr), 2);
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Shared vertex welding for the soup formats: exact bit-pattern match, so
// vertices identical before export stay identical after.
struct VertexKey {
    float x, y, z;
    bool operator==(const VertexKey&) const = default;
};
struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&](float f) {
            std::uint32_t bits;
            std::memcpy(&bits, &f, 4);
            h = (h ^ bits) * 1099511628211ull;
        };
        mix(k.x); mix(k.y); mix(k.z);
        return h;
    }
};

class Welder {
  public:
    std::int32_t add(const Vec3& v) {
        const VertexKey key{static_cast<float>(v.x), static_cast<float>(v.y),
                            static_cast<float>(v.z)};
        auto [it, inserted] = index_.try_emplace(key, static_cast<std::int32_t>(mesh_.vertices.size()));
        if (inserted) mesh_.vertices.push_back(v);
        return it->second;
    }
    TriMesh take() { return std::move(mesh_); }
    void push_face(std::int32_t a, std::int32_t b, std::int32_t c) {
        mesh_.faces.push_back({a, b, c});
    }

  private:
    TriMesh mesh_;
    std::unordered_map<VertexKey, std::int32_t, VertexKeyHash> index_;
};

TriMesh read_stl_ascii(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    Welder weld;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::int32_t> loop;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "vertex") {
            Vec3 v;
            if (!(ss >> v.x >> v.y >> v.z)) parse_fail(path, lineno, "malformed vertex");
            loop.push_back(weld.add(v));
        } else if (tag == "endloop") {
            if (loop.size() != 3)
                parse_fail(path, lineno, "facet loop must have exactly 3 vertices");
            weld.push_face(loop[0], loop[1], loop[2]);
            loop.clear();
        }
    }
    TriMesh mesh = weld.take();
    if (mesh.faces.empty()) parse_fail(path, lineno, "no facets found");
    return mesh;
}

TriMesh read_stl_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    char header[80];
    if (!in.read(header, 80))
        throw std::runtime_error(path.string() + ": offset 0: truncated STL header");
    std::uint32_t count = 0;
    if (!in.read(reinterpret_cast<char*>(&count), 4))
        throw std::runtime_error(path.string() + ": offset 80: missing triangle count");
    Welder weld;
    for (std::uint32_t t = 0; t < count; ++t) {
        char rec[50];
        if (!in.read(rec, 50))
            throw std::runtime_error(path.string() + ": offset " +
                                     std::to_string(84 + 50ull * t) + ": truncated triangle " +
                                     std::to_string(t));
        float vals[12];
        std::memcpy(vals, rec, 48);
        std::int32_t idx[3];
        for (int i = 0; i < 3; ++i)
            idx[i] = weld.add({vals[3 * i + 3], vals[3 * i + 4], vals[3 * i + 5]});
        weld.push_face(idx[0], idx[1], idx[2]);
    }
    TriMesh mesh = weld.take();
    if (mesh.faces.empty())
        throw std::runtime_error(path.string() + ": empty STL (0 triangles)");
    return mesh;
}

bool looks_binary_stl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    const auto size = static_cast<std::uint64_t>(in.tellg());
    if (size < 84) return false;
    in.seekg(80);
    std::uint32_t count = 0;
    in.read(reinterpret_cast<char*>(&count), 4);
    return size == 84ull + 50ull * count;
}

}  // namespace

MeshFormat mesh_format_from_name(const std::string& name) {
    if (name == "obj") return MeshFormat::Obj;
    if (name == "stl-ascii") return MeshFormat::StlAscii;
    if (name == "stl" || name == "stl-binary") return MeshFormat::StlBinary;
    throw std::invalid_argument("unknown mesh format: " + name);
}

void export_mesh(const TriMesh& mesh, MeshFormat format, const std::filesystem::path& path) {
    switch (format) {
        case MeshFormat::Obj: write_obj(mesh, path); return;
        case MeshFormat::StlAscii: write_stl_ascii(mesh, path); return;
        case MeshFormat::StlBinary: write_stl_binary(mesh, path); return;
    }
    throw std::invalid_argument("unknown mesh format");
}

TriMesh import_mesh(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".obj") return read_obj(path);
    if (ext == ".stl") return looks_binary_stl(path) ? read_stl_binary(path) : read_stl_ascii(path);
    // No recognized extension: sniff.
    if (looks_binary_stl(path)) return read_stl_binary(path);
    std::ifstream in(path);
    std::string first;
    in >> first;
    if (first == "solid") return read_stl_ascii(path);
    return read_obj(path);
}

}  // namespace monostat
