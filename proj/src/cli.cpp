#include "polsar/cli.hpp"

#include "polsar/config.hpp"
#include "polsar/decomposition.hpp"
#include "polsar/errors.hpp"
#include "polsar/eval.hpp"
#include "polsar/io.hpp"
#include "polsar/speckle.hpp"
#include "polsar/svm.hpp"
#include "polsar/synth.hpp"
#include "polsar/wishart.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <functional>
#include <map>
#include <memory>
#include <optional>

namespace polsar::cli {

namespace {

namespace fs = std::filesystem;

/// String-valued flag that can fall back to a config-file key.
struct Binding {
    CLI::Option* option = nullptr;
    std::string key;
    std::string value;
};

class Command {
public:
    Command(CLI::App& app, const std::string& name, const std::string& description)
        : sub_(app.add_subcommand(name, description)) {
        sub_->add_option("--config", config_path_, "key = value file supplying defaults for any flag");
    }

    CLI::App* app() const { return sub_; }

    void flag(const std::string& name, const std::string& key, const std::string& description,
              std::string default_value = {}) {
        auto b = std::make_unique<Binding>();
        b->key = key;
        b->value = std::move(default_value);
        b->option = sub_->add_option("--" + name, b->value, description);
        bindings_[key] = std::move(b);
    }

    /// Applies config fallbacks; called after parsing.
    void resolve() {
        if (config_path_.empty()) return;
        const PipelineConfig cfg = PipelineConfig::load(config_path_);
        config_ = cfg;
        for (auto& [key, b] : bindings_)
            if (b->option->count() == 0)
                if (auto v = cfg.get(key)) b->value = *v;
    }

    const std::optional<PipelineConfig>& config() const { return config_; }

    std::string str(const std::string& key) const { return bindings_.at(key)->value; }

    std::string required(const std::string& key) const {
        const std::string v = str(key);
        if (v.empty()) throw ConfigError(sub_->get_name() + ": missing required --" + bindings_.at(key)->option->get_name().substr(2));
        return v;
    }

    template <typename T> T number(const std::string& key) const {
        const std::string v = required(key);
        T out{};
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size())
            throw ConfigError(sub_->get_name() + ": invalid value '" + v + "' for " + key);
        return out;
    }

private:
    CLI::App* sub_;
    std::string config_path_;
    std::optional<PipelineConfig> config_;
    std::map<std::string, std::unique_ptr<Binding>> bindings_;
};

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        out.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Kernel kernel_from(const Command& c) {
    const std::string kind = c.required("kernel");
    Kernel k;
    if (kind == "rbf") k = Kernel::rbf(c.number<double>("gamma"));
    else if (kind == "polynomial") k = Kernel::polynomial(c.number<int>("degree"));
    else if (kind == "sigmoid") k = Kernel::sigmoid();
    else throw ConfigError("train-svm: unknown kernel '" + kind + "' (rbf, polynomial, sigmoid)");
    k.validate();
    return k;
}

void write_class_outputs(const Command& c, const ClassMap& map) {
    io::write_pgm(c.required("output"), map);
    if (const auto ppm = c.str("map"); !ppm.empty()) io::write_ppm(ppm, map);
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_synth(const Command& c, std::ostream& out) {
    if (!c.config()) throw ConfigError("synth: a scene --config file is required");
    SceneSpec spec = c.config()->scene_spec();
    if (!c.str("seed").empty()) spec.seed = c.number<std::uint64_t>("seed");

    const Scene scene = generate_scene(spec);
    io::write_t3(c.required("output"), scene.raster, spec.seed);
    if (const auto truth = c.str("truth"); !truth.empty()) io::write_pgm(truth, scene.truth);
    if (const auto slc = c.str("slc"); !slc.empty()) io::write_slc(slc, generate_slc(spec), spec.seed);
    if (const auto train = c.str("train_mask"); !train.empty()) {
        const auto per_class = c.number<std::size_t>("train_per_class");
        io::write_pgm(train, sample_training_mask(scene.truth, per_class, spec.seed));
    }
    out << "synth: " << spec.width << "x" << spec.height << " scene, " << spec.classes.size() << " classes, "
        << spec.looks << " looks\n";
}

void cmd_filter(const Command& c, std::ostream& out) {
    const fs::path input = c.required("input");
    const std::string mode = c.required("mode");
    FilterConfig cfg;
    cfg.window = c.number<int>("window");
    if (!c.str("enl").empty()) cfg.looks = c.number<int>("enl");

    const io::DatasetHeader header = io::read_header(input);
    CoherencyRaster result;
    if (mode == "boxcar") {
        if (header.kind != io::DatasetKind::Slc)
            throw ConfigError("filter: boxcar multilooking needs an slc dataset as --input");
        result = boxcar_multilook(io::read_slc(input), cfg.window);
    } else if (mode == "lee") {
        cfg.mode = FilterMode::Lee;
        CoherencyRaster source = header.kind == io::DatasetKind::Slc ? boxcar_multilook(io::read_slc(input), 1)
                                                                     : io::read_t3(input);
        result = lee_filter(source, cfg);
    } else {
        throw ConfigError("filter: unknown --mode '" + mode + "' (boxcar, lee)");
    }
    io::write_t3(c.required("output"), result);
    out << "filter: " << mode << " " << cfg.window << "x" << cfg.window << ", looks " << result.looks << "\n";
}

void cmd_decompose(const Command& c, std::ostream& out) {
    const HaaRaster haa = haa_raster(io::read_t3(c.required("input")));
    io::write_haa(c.required("output"), haa);
    std::size_t invalid = 0;
    for (const auto& p : haa.data) invalid += p.valid ? 0 : 1;
    out << "decompose: " << haa.width << "x" << haa.height << ", " << invalid << " zero-power pixels\n";
}

void cmd_train_wishart(const Command& c, std::ostream& out) {
    const CoherencyRaster raster = io::read_t3(c.required("input"));
    const WishartModel model = train_wishart(raster, io::read_pgm(c.required("mask")));
    io::save_wishart(c.required("model"), model);
    out << "train-wishart: " << model.classes.size() << " classes\n";
}

void cmd_classify_wishart(const Command& c, std::ostream& out) {
    const CoherencyRaster raster = io::read_t3(c.required("input"));
    const WishartModel model = io::load_wishart(c.required("model"));
    write_class_outputs(c, classify_wishart(raster, model));
    out << "classify-wishart: " << raster.width << "x" << raster.height << "\n";
}

void cmd_train_svm(const Command& c, std::ostream& out) {
    const CoherencyRaster raster = io::read_t3(c.required("input"));
    const SampleSet samples = training_samples(raster, io::read_pgm(c.required("mask")));
    const SvmModel model = train_svm(samples, kernel_from(c), c.number<double>("cost"));
    io::save_svm(c.required("model"), model);
    std::size_t nsv = 0;
    for (const auto& m : model.machines) nsv += m.support_count();
    out << "train-svm: " << model.class_ids.size() << " classes, " << model.machines.size() << " machines, " << nsv
        << " support vectors\n";
}

void cmd_classify_svm(const Command& c, std::ostream& out) {
    const CoherencyRaster raster = io::read_t3(c.required("input"));
    const SvmModel model = io::load_svm(c.required("model"));
    write_class_outputs(c, classify_svm(extract_features(raster), model));
    out << "classify-svm: " << raster.width << "x" << raster.height << "\n";
}

void cmd_evaluate(const Command& c, std::ostream& out, std::ostream& err) {
    const LabelMask truth = io::read_pgm(c.required("truth"));
    const ClassMap predicted = io::read_pgm(c.required("predicted"));
    const std::size_t k = std::max(truth.max_label(), predicted.max_label());
    std::vector<std::string> names = c.str("names").empty() ? default_class_names(k) : split_names(c.str("names"));
    if (names.size() < k)
        throw ConfigError("evaluate: " + std::to_string(names.size()) + " class names given, labels go up to " +
                          std::to_string(k));
    const ConfusionMatrix cm = confusion(truth, predicted, names);
    const std::string csv = cm.to_csv();
    out << csv;
    if (const auto path = c.str("csv"); !path.empty()) io::write_text(path, csv);
    err << "evaluate: mean recall " << cm.mean_recall() << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polarimetric SAR classification toolkit"};
    app.require_subcommand(1);

    Command synth(app, "synth", "generate a synthetic multi-look scene from a scene config");
    synth.flag("output", "output", "output T3 dataset directory");
    synth.flag("truth", "truth", "ground-truth label mask (PGM)");
    synth.flag("slc", "slc", "also write a single-look SLC dataset here");
    synth.flag("train-mask", "train_mask", "training mask (PGM) sampled from the ground truth");
    synth.flag("train-per-class", "train_per_class", "training pixels per class", "500");
    synth.flag("seed", "seed", "override the scene seed");

    Command filter(app, "filter", "boxcar multilook (SLC input) or Lee filter");
    filter.flag("input", "input", "input dataset (slc or t3)");
    filter.flag("output", "output", "output T3 dataset directory");
    filter.flag("mode", "mode", "boxcar or lee", "boxcar");
    filter.flag("window", "window", "odd window size", "3");
    filter.flag("enl", "enl", "equivalent looks for Lee weighting (default: dataset looks)");

    Command decompose(app, "decompose", "entropy / anisotropy / alpha planes");
    decompose.flag("input", "input", "input T3 dataset");
    decompose.flag("output", "output", "output H/A/alpha dataset directory");

    Command train_w(app, "train-wishart", "train the supervised Wishart classifier");
    train_w.flag("input", "input", "input T3 dataset");
    train_w.flag("mask", "mask", "training mask (PGM)");
    train_w.flag("model", "model", "output model file");

    Command classify_w(app, "classify-wishart", "classify with a Wishart model");
    classify_w.flag("input", "input", "input T3 dataset");
    classify_w.flag("model", "model", "model file");
    classify_w.flag("output", "output", "output label map (PGM)");
    classify_w.flag("map", "map", "color class map (PPM)");

    Command train_s(app, "train-svm", "train the one-vs-one kernel SVM");
    train_s.flag("input", "input", "input T3 dataset");
    train_s.flag("mask", "mask", "training mask (PGM)");
    train_s.flag("model", "model", "output model file");
    train_s.flag("kernel", "kernel", "rbf, polynomial or sigmoid", "rbf");
    train_s.flag("gamma", "gamma", "RBF gamma in exp(-gamma |x-y|^2)", "0.444");
    train_s.flag("cost", "cost", "soft-margin cost C", "100");
    train_s.flag("degree", "degree", "polynomial degree", "3");

    Command classify_s(app, "classify-svm", "classify with an SVM model");
    classify_s.flag("input", "input", "input T3 dataset");
    classify_s.flag("model", "model", "model file");
    classify_s.flag("output", "output", "output label map (PGM)");
    classify_s.flag("map", "map", "color class map (PPM)");

    Command evaluate(app, "evaluate", "confusion matrix of a label map against ground truth");
    evaluate.flag("truth", "truth", "ground-truth mask (PGM, 0 = unlabeled)");
    evaluate.flag("predicted", "predicted", "predicted label map (PGM)");
    evaluate.flag("names", "names", "comma-separated class names");
    evaluate.flag("output", "csv", "also write the CSV here");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    const std::pair<Command*, std::function<void(const Command&)>> table[] = {
        {&synth, [&](const Command& c) { cmd_synth(c, out); }},
        {&filter, [&](const Command& c) { cmd_filter(c, out); }},
        {&decompose, [&](const Command& c) { cmd_decompose(c, out); }},
        {&train_w, [&](const Command& c) { cmd_train_wishart(c, out); }},
        {&classify_w, [&](const Command& c) { cmd_classify_wishart(c, out); }},
        {&train_s, [&](const Command& c) { cmd_train_svm(c, out); }},
        {&classify_s, [&](const Command& c) { cmd_classify_svm(c, out); }},
        {&evaluate, [&](const Command& c) { cmd_evaluate(c, out, err); }},
    };
    for (const auto& [cmd, fn] : table) {
        if (!cmd->app()->parsed()) continue;
        try {
            cmd->resolve();
            fn(*cmd);
            return 0;
        } catch (const std::exception& e) {
            err << "polsar " << cmd->app()->get_name() << ": " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}

} // namespace polsar::cli
