#include "models/checkpoint.hpp"

#include <cstdio>
#include <filesystem>

namespace decoy::models {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec, Errc::io, "cannot create checkpoint directory '" + dir + "': " + ec.message());
}

// Writes the schema, refusing to overwrite a different one: the two training
// entry points may populate one directory in either order, but only if they
// encoded their inputs identically.
void write_schema_checked(const std::string& dir, const FeatureSchema& schema) {
    std::string path = (fs::path(dir) / "features.schema").string();
    if(fs::exists(path)) {
        json existing = schema_to_json(load_schema(path));
        require(existing == schema_to_json(schema), Errc::validation,
                path + ": directory already holds a model trained with a different "
                       "feature schema");
    }
    save_schema(path, schema);
}

void write_threshold(const std::string& dir, double threshold) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g\n", threshold);
    write_text_file((fs::path(dir) / "threshold.txt").string(), buf);
}

} // namespace

void save_models(const std::string& dir, const ModelBundle& b) {
    ensure_dir(dir);
    save_schema((fs::path(dir) / "features.schema").string(), b.schema);
    save_json((fs::path(dir) / "dip.model").string(), dip_to_json(b.dip));
    save_json((fs::path(dir) / "dog.model").string(), dog_to_json(b.dog));
    write_threshold(dir, b.dip.threshold);
}

void save_dip_checkpoint(const std::string& dir, const FeatureSchema& schema,
                         const DipModel& dip) {
    ensure_dir(dir);
    write_schema_checked(dir, schema);
    save_json((fs::path(dir) / "dip.model").string(), dip_to_json(dip));
    write_threshold(dir, dip.threshold);
}

void save_dog_checkpoint(const std::string& dir, const FeatureSchema& schema,
                         const DogModel& dog) {
    ensure_dir(dir);
    write_schema_checked(dir, schema);
    save_json((fs::path(dir) / "dog.model").string(), dog_to_json(dog));
}

ModelBundle load_models(const std::string& dir) {
    require(fs::is_directory(dir), Errc::io, "checkpoint directory '" + dir + "' does not exist");

    ModelBundle b;
    std::string schema_path = (fs::path(dir) / "features.schema").string();
    std::string dip_path = (fs::path(dir) / "dip.model").string();
    std::string dog_path = (fs::path(dir) / "dog.model").string();
    std::string thr_path = (fs::path(dir) / "threshold.txt").string();

    b.schema = load_schema(schema_path);
    b.dip = dip_from_json(load_json(dip_path), dip_path);
    b.dog = dog_from_json(load_json(dog_path), dog_path);

    std::string thr = read_text_file(thr_path);
    try {
        std::size_t used = 0;
        b.dip.threshold = std::stod(thr, &used);
        while(used < thr.size() && std::isspace(static_cast<unsigned char>(thr[used])))
            ++used;
        require(used == thr.size(), Errc::parse, "");
    } catch(const Error&) {
        raise(Errc::parse, thr_path + ": expected a single number");
    } catch(const std::exception&) {
        raise(Errc::parse, thr_path + ": expected a single number");
    }
    require(b.dip.threshold > 0.0 && b.dip.threshold < 1.0, Errc::validation,
            thr_path + ": threshold must lie in (0, 1)");

    require(b.dip.encoder.in_dim() == b.schema.feature_dim(), Errc::validation,
            dip_path + ": model input width does not match the feature schema");
    require(b.dog.cond_encoder.in_dim() == b.schema.feature_dim(), Errc::validation,
            dog_path + ": model input width does not match the feature schema");
    return b;
}

} // namespace decoy::models
