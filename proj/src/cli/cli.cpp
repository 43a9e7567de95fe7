#include "ffn/cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ffn/core/errors.hpp"
#include "ffn/core/hash.hpp"
#include "ffn/data/dataset.hpp"
#include "ffn/data/fetch.hpp"
#include "ffn/data/image.hpp"
#include "ffn/report/report.hpp"
#include "ffn/train/checkpoint.hpp"
#include "ffn/train/tasks.hpp"

namespace ffn::cli {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Options
// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string data_dir;
  std::string out;
  std::string config_file;
  std::uint64_t seed = 0;
};

struct TrainOpts : CommonOpts {
  std::string model = "cnn";
  std::string embedding_init = "random";
  std::string embedding_mode = "dynamic";
  std::string glove_path;
  double lr = 0;             // 0 = per-model default
  std::size_t batch_size = 64;
  std::size_t max_epochs = 0;  // 0 = per-model default
  std::size_t patience = 3;
  std::size_t image_size = 560;
  std::string bert_vocab;
  std::string bert_encoder = "stub";
};

std::string data_file(const std::string& data_dir, Split split) {
  return (fs::path(data_dir) / (std::string(split_name(split)) + ".tsv")).string();
}

std::vector<LabeledSample> load_split_or_throw(const std::string& data_dir, Split split,
                                               DataMode mode) {
  auto res = load_dataset(data_file(data_dir, split), DatasetSchema{}, split, mode);
  for (const auto& rej : res.rejections) {
    std::cerr << split_name(split) << " row " << rej.row << " rejected: " << rej.reason
              << "\n";
  }
  return std::move(res.samples);
}

// Values from --config fill any option the user did not pass on the command
// line; explicit flags win.
void apply_config_file(CLI::App& cmd, const std::string& config_file) {
  if (config_file.empty()) return;
  const KvFile kv = KvFile::load(config_file);
  for (const auto& [key, value] : kv.entries()) {
    CLI::Option* opt = cmd.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("unknown key '" + key + "' in " + config_file);
    if (opt->count() == 0) opt->add_result(value)->run_callback();
  }
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

int cmd_stats(const CommonOpts& opts) {
  fs::create_directories(opts.out);
  const CleaningConfig cleaning;
  std::string text;
  std::vector<std::pair<std::string, ClassDistribution>> dists;
  const std::vector<std::size_t> thresholds = {10, 15, 20, 25};

  for (Split split : {Split::Train, Split::Validation, Split::Test}) {
    const std::string path = data_file(opts.data_dir, split);
    if (!fs::exists(path)) continue;
    auto samples = load_split_or_throw(opts.data_dir, split, DataMode::Unimodal);
    if (samples.empty()) continue;
    const auto dist = class_distribution(samples);
    dists.emplace_back(split_name(split), dist);

    text += std::string("split: ") + split_name(split) + "\n";
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      char line[128];
      std::snprintf(line, sizeof(line), "  %-22s %8llu  %.4f\n",
                    label_display_name(static_cast<Label>(c)),
                    static_cast<unsigned long long>(dist.counts[c]), dist.proportions[c]);
      text += line;
    }

    // Token-length table, both before and after cleaning (the published
    // counts do not say which side of cleaning they were computed on).
    std::vector<std::size_t> raw_lens, clean_lens;
    for (const auto& s : samples) {
      std::istringstream in(s.title);
      std::string tok;
      std::size_t n = 0;
      while (in >> tok) ++n;
      raw_lens.push_back(n);
      clean_lens.push_back(clean_text(s.title, cleaning).size());
    }
    const auto raw_pct = length_percentiles(raw_lens, thresholds);
    const auto clean_pct = length_percentiles(clean_lens, thresholds);
    text += "  % of texts shorter than length t\n";
    text += "    t        raw    cleaned\n";
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      char line[64];
      std::snprintf(line, sizeof(line), "    %-5zu %6.1f %10.1f\n", thresholds[i],
                    raw_pct[i], clean_pct[i]);
      text += line;
    }
  }
  if (dists.empty()) throw DataError("no splits found under " + opts.data_dir);

  std::ofstream f(fs::path(opts.out) / "stats.txt", std::ios::binary);
  f << text;
  write_png((fs::path(opts.out) / "distribution.png").string(),
            render_distribution_chart(dists));
  std::cout << text;
  return 0;
}

// ---------------------------------------------------------------------------
// preprocess
// ---------------------------------------------------------------------------

int cmd_preprocess(const CommonOpts& opts) {
  fs::create_directories(opts.out);
  auto train = load_split_or_throw(opts.data_dir, Split::Train, DataMode::Unimodal);
  if (train.empty()) throw DataError("empty train split");
  const CleaningConfig cleaning;
  const Vocabulary vocab = build_vocab_from_samples(train, cleaning);
  vocab.save((fs::path(opts.out) / "vocab.tsv").string());
  std::cout << "vocabulary size " << vocab.size() << " (incl. pad/unk), hash "
            << hex64(vocab.hash()) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// fetch-images
// ---------------------------------------------------------------------------

int cmd_fetch_images(const CommonOpts& opts) {
  std::vector<LabeledSample> all;
  for (Split split : {Split::Train, Split::Validation, Split::Test}) {
    const std::string path = data_file(opts.data_dir, split);
    if (!fs::exists(path)) continue;
    auto samples = load_split_or_throw(opts.data_dir, split, DataMode::Multimodal);
    all.insert(all.end(), samples.begin(), samples.end());
  }
  if (all.empty()) throw DataError("no multimodal samples under " + opts.data_dir);
  const auto report = fetch_images(all, opts.out, opts.data_dir);
  write_fetch_report(report, (fs::path(opts.out) / "fetch_report.tsv").string());
  std::size_t fetched = 0, cached = 0, failed = 0;
  for (const auto& r : report) {
    if (r.status == FetchStatus::Fetched) ++fetched;
    if (r.status == FetchStatus::Cached) ++cached;
    if (r.status == FetchStatus::Failed) ++failed;
  }
  std::cout << "fetched " << fetched << ", cached " << cached << ", failed " << failed
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

int cmd_synth(const CommonOpts& opts, std::size_t per_class, bool with_images) {
  write_synthetic_dataset(opts.out, opts.seed, per_class, with_images);
  std::cout << "synthetic dataset written to " << opts.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

KvFile base_manifest(const TrainOpts& opts, const std::string& architecture) {
  KvFile m;
  m.set("architecture", architecture);
  m.set_u64("classes", kNumClasses);
  return m;
}

void add_embedding_fields(KvFile& m, const Vocabulary& vocab, const EmbeddingConfig& ecfg) {
  m.set_u64("preproc.seq_len", kSeqLen);
  m.set("preproc.vocab_hash", hex64(vocab.hash()));
  m.set("embedding.init", embedding_init_name(ecfg.init));
  m.set("embedding.mode", embedding_mode_name(ecfg.mode));
  m.set_u64("embedding.dim", ecfg.dimension);
  m.set_double("embedding.random_scale", ecfg.random_scale);
  m.set_u64("embedding.seed", ecfg.seed);
}

EmbeddingConfig make_embedding_config(const TrainOpts& opts) {
  EmbeddingConfig ecfg;
  if (opts.embedding_init == "glove") {
    if (opts.glove_path.empty()) {
      throw UsageError("--embedding-init glove requires --glove <vectors file>");
    }
    ecfg.init = EmbeddingInit::Glove;
    ecfg.glove_path = opts.glove_path;
  } else if (opts.embedding_init != "random") {
    throw UsageError("unknown --embedding-init '" + opts.embedding_init + "'");
  }
  if (opts.embedding_mode == "static") {
    ecfg.mode = EmbeddingMode::Static;
  } else if (opts.embedding_mode == "dynamic") {
    ecfg.mode = EmbeddingMode::Dynamic;
  } else {
    throw UsageError("unknown --embedding-mode '" + opts.embedding_mode + "'");
  }
  ecfg.seed = mix64(opts.seed ^ 0xe3b0c44298fc1c14ull);
  return ecfg;
}

int cmd_train(const TrainOpts& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const bool is_bert = opts.model == "bert";
  const bool is_multimodal = opts.model == "multimodal";

  TrainConfig tcfg;
  tcfg.lr = opts.lr > 0 ? opts.lr : (is_bert ? 2e-5 : 1e-3);
  tcfg.batch_size = opts.batch_size;
  tcfg.max_epochs = opts.max_epochs > 0 ? opts.max_epochs : (is_bert ? 2 : 50);
  tcfg.patience = opts.patience;
  tcfg.seed = opts.seed;
  tcfg.validate();

  const DataMode mode = is_multimodal ? DataMode::Multimodal : DataMode::Unimodal;
  auto train_samples = load_split_or_throw(opts.data_dir, Split::Train, mode);
  auto val_samples = load_split_or_throw(opts.data_dir, Split::Validation, mode);
  if (train_samples.empty() || val_samples.empty()) {
    throw DataError("train/validation splits must be non-empty");
  }

  fs::create_directories(opts.out);
  const std::string ckpt_dir = (fs::path(opts.out) / "checkpoint").string();
  Rng init_rng(mix64(opts.seed ^ 0x9d2c5680u));
  std::unique_ptr<TrainableTask> task;
  KvFile manifest;
  std::vector<ParamRef<float>> ckpt_params;
  std::string vocab_text;   // saved next to the checkpoint when present
  std::string bert_vocab_copy;

  if (opts.model == "cnn" || opts.model == "bilstm" || is_multimodal) {
    const CleaningConfig cleaning;
    const Vocabulary vocab = build_vocab_from_samples(train_samples, cleaning);
    EmbeddingConfig ecfg = make_embedding_config(opts);
    EmbeddingBundle emb(init_embedding_matrix(vocab, ecfg), ecfg.mode);
    vocab_text = vocab.serialize();

    if (opts.model == "cnn") {
      TextCnnT<float> model;
      model.init(init_rng);
      manifest = base_manifest(opts, "cnn");
      manifest.set_u64("model.channels", model.cfg.features.channels);
      manifest.set_u64("model.hidden", model.cfg.hidden);
      add_embedding_fields(manifest, vocab, ecfg);
      auto t = std::make_unique<TextCnnTask>(std::move(model), std::move(emb),
                                             encode_samples(train_samples, vocab, cleaning),
                                             encode_samples(val_samples, vocab, cleaning));
      ckpt_params = t->checkpoint_parameters();
      task = std::move(t);
    } else if (opts.model == "bilstm") {
      BiLstmCnnT<float> model;
      model.init(init_rng);
      manifest = base_manifest(opts, "bilstm");
      manifest.set_u64("model.hidden", model.cfg.hidden);
      manifest.set_u64("model.conv_filters", model.cfg.conv_filters);
      manifest.set_u64("model.conv_k", model.cfg.conv_k);
      manifest.set_u64("model.dense_hidden", model.cfg.dense_hidden);
      add_embedding_fields(manifest, vocab, ecfg);
      auto t = std::make_unique<BiLstmCnnTask>(std::move(model), std::move(emb),
                                               encode_samples(train_samples, vocab, cleaning),
                                               encode_samples(val_samples, vocab, cleaning));
      ckpt_params = t->checkpoint_parameters();
      task = std::move(t);
    } else {
      MultimodalT<float>::Config mcfg;
      mcfg.image_size = opts.image_size;
      MultimodalT<float> model(mcfg);
      model.init(init_rng);
      manifest = base_manifest(opts, "multimodal");
      manifest.set_u64("model.image_size", mcfg.image_size);
      manifest.set_u64("model.hidden", mcfg.hidden);
      add_embedding_fields(manifest, vocab, ecfg);
      auto train_data = MultimodalTask::load_split(train_samples, vocab, cleaning,
                                                   opts.data_dir, mcfg.image_size);
      auto val_data = MultimodalTask::load_split(val_samples, vocab, cleaning,
                                                 opts.data_dir, mcfg.image_size);
      if (train_data.seqs.empty() || val_data.seqs.empty()) {
        throw DataError("no multimodal samples with decodable images");
      }
      auto t = std::make_unique<MultimodalTask>(std::move(model), std::move(emb),
                                                std::move(train_data), std::move(val_data));
      ckpt_params = t->checkpoint_parameters();
      task = std::move(t);
    }
  } else if (is_bert) {
    if (opts.bert_vocab.empty()) throw UsageError("--model bert requires --bert-vocab");
    const WordPieceVocab wp = WordPieceVocab::load(opts.bert_vocab);
    auto encoder = std::shared_ptr<BertEncoder>(make_bert_encoder(opts.bert_encoder));
    BertHeadT<float> head;
    head.init(init_rng);
    manifest = base_manifest(opts, "bert");
    manifest.set_u64("model.max_len", kBertMaxLen);
    manifest.set_u64("model.dim", kBertDim);
    manifest.set("model.encoder", encoder->name());
    {
      std::ifstream f(opts.bert_vocab, std::ios::binary);
      std::stringstream buf;
      buf << f.rdbuf();
      bert_vocab_copy = buf.str();
      manifest.set("preproc.bert_vocab_hash", hex64(fnv1a64(bert_vocab_copy)));
    }
    auto t = std::make_unique<BertTask>(std::move(head), encoder,
                                        BertTask::encode_split(train_samples, wp, kBertMaxLen),
                                        BertTask::encode_split(val_samples, wp, kBertMaxLen));
    ckpt_params = t->parameters();
    task = std::move(t);
  } else {
    throw UsageError("unknown --model '" + opts.model + "'");
  }

  const TrainHistory history = train(*task, tcfg);
  history.save((fs::path(opts.out) / "history.tsv").string());
  save_checkpoint(ckpt_dir, manifest, ckpt_params);
  if (!vocab_text.empty()) {
    std::ofstream f(fs::path(ckpt_dir) / "vocab.tsv", std::ios::binary);
    f << vocab_text;
  }
  if (!bert_vocab_copy.empty()) {
    std::ofstream f(fs::path(ckpt_dir) / "bert_vocab.txt", std::ios::binary);
    f << bert_vocab_copy;
  }

  KvFile run;
  run.set("command", "train");
  run.set("model", opts.model);
  run.set("embedding.init", opts.embedding_init);
  run.set("embedding.mode", opts.embedding_mode);
  run.set("data_dir", opts.data_dir);
  run.set_u64("seed", opts.seed);
  run.set_double("lr", tcfg.lr);
  run.set_u64("batch_size", tcfg.batch_size);
  run.set_u64("max_epochs", tcfg.max_epochs);
  run.set_u64("patience", tcfg.patience);
  run.set("dataset.train_hash", hex64(file_fnv1a(data_file(opts.data_dir, Split::Train))));
  run.set("dataset.validation_hash",
          hex64(file_fnv1a(data_file(opts.data_dir, Split::Validation))));
  run.set_u64("epochs_run", history.epochs.size());
  run.set_u64("best_epoch", history.best_epoch);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  run.set_double("wall_time_seconds", wall);
  run.save((fs::path(opts.out) / "run_manifest.txt").string());

  if (!history.epochs.empty()) {
    std::cout << "trained " << history.epochs.size() << " epochs; best epoch "
              << history.best_epoch << " (val loss "
              << history.epochs[history.best_epoch - 1].val_loss << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate / predict: rebuild a model from a checkpoint
// ---------------------------------------------------------------------------

struct RestoredModel {
  std::string architecture;
  Vocabulary vocab;
  EmbeddingBundle emb;
  CleaningConfig cleaning;
  std::unique_ptr<TextCnnT<float>> cnn;
  std::unique_ptr<BiLstmCnnT<float>> bilstm;
  std::unique_ptr<MultimodalT<float>> multimodal;
  std::unique_ptr<BertHeadT<float>> bert_head;
  std::unique_ptr<WordPieceVocab> bert_vocab;
  std::shared_ptr<BertEncoder> encoder;
  std::size_t image_size = 560;
  KvFile manifest;

  LogProb predict(const std::string& title, const std::optional<std::string>& image_path) {
    if (architecture == "bert") {
      BertHeadT<float>::Cache cache;
      bert_head->forward(encoder->encode(bert_encode(title, *bert_vocab)), cache);
      LogProb lp{};
      for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache.logp[c];
      return lp;
    }
    const TokenSequence seq = encode(clean_text(title, cleaning), vocab);
    const Tensor<float> e = lookup(seq, emb.matrix);
    LogProb lp{};
    if (architecture == "cnn") {
      TextCnnT<float>::Cache cache;
      cnn->forward(e, cache);
      for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache.logp[c];
    } else if (architecture == "bilstm") {
      BiLstmCnnT<float>::Cache cache;
      bilstm->forward(e, cache);
      for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache.logp[c];
    } else {
      if (!image_path) throw UsageError("multimodal checkpoint requires --image");
      const Tensor<float> img = load_and_resize(*image_path, image_size);
      MultimodalT<float>::Cache cache;
      multimodal->forward(e, img, cache);
      for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] = cache.logp[c];
    }
    return lp;
  }
};

RestoredModel restore_model(const std::string& ckpt_dir, const std::string& encoder_spec) {
  const LoadedCheckpoint ckpt = load_checkpoint(ckpt_dir);
  RestoredModel rm;
  rm.manifest = ckpt.manifest;
  rm.architecture = ckpt.manifest.get("architecture");

  if (rm.architecture == "bert") {
    rm.bert_vocab = std::make_unique<WordPieceVocab>(
        WordPieceVocab::load((fs::path(ckpt_dir) / "bert_vocab.txt").string()));
    rm.encoder = make_bert_encoder(encoder_spec.empty() ? ckpt.manifest.get("model.encoder")
                                                        : encoder_spec);
    rm.bert_head = std::make_unique<BertHeadT<float>>();
    restore_params(ckpt, rm.bert_head->params());
    return rm;
  }

  rm.vocab = Vocabulary::load((fs::path(ckpt_dir) / "vocab.tsv").string());
  if (hex64(rm.vocab.hash()) != ckpt.manifest.get("preproc.vocab_hash")) {
    throw DataError("checkpoint vocab.tsv does not match the manifest fingerprint");
  }
  EmbeddingMatrix emb;
  emb.weights = ckpt.param("embedding");
  const EmbeddingMode mode = ckpt.manifest.get("embedding.mode") == std::string("dynamic")
                                 ? EmbeddingMode::Dynamic
                                 : EmbeddingMode::Static;
  rm.emb = EmbeddingBundle(std::move(emb), mode);

  if (rm.architecture == "cnn") {
    rm.cnn = std::make_unique<TextCnnT<float>>();
    restore_params(ckpt, rm.cnn->params());
  } else if (rm.architecture == "bilstm") {
    rm.bilstm = std::make_unique<BiLstmCnnT<float>>();
    restore_params(ckpt, rm.bilstm->params());
  } else if (rm.architecture == "multimodal") {
    MultimodalT<float>::Config mcfg;
    mcfg.image_size = ckpt.manifest.get_u64("model.image_size");
    rm.image_size = mcfg.image_size;
    rm.multimodal = std::make_unique<MultimodalT<float>>(mcfg);
    restore_params(ckpt, rm.multimodal->params());
  } else {
    throw DataError("unknown architecture '" + rm.architecture + "' in checkpoint");
  }
  return rm;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& ckpt_dir,
                 const std::string& split_name_arg) {
  const auto split = split_from_name(split_name_arg);
  if (!split) throw UsageError("unknown split '" + split_name_arg + "'");
  RestoredModel rm = restore_model(ckpt_dir, "");

  const DataMode mode =
      rm.architecture == "multimodal" ? DataMode::Multimodal : DataMode::Unimodal;
  auto samples = load_split_or_throw(opts.data_dir, *split, mode);
  if (samples.empty()) throw DataError("empty split " + split_name_arg);

  // Fingerprint check: the dataset's own training vocabulary must match the
  // one the checkpoint was built with, otherwise ids would be skewed.
  if (rm.architecture != "bert") {
    auto train_samples = load_split_or_throw(opts.data_dir, Split::Train, DataMode::Unimodal);
    const Vocabulary data_vocab = build_vocab_from_samples(train_samples, rm.cleaning);
    if (hex64(data_vocab.hash()) != rm.manifest.get("preproc.vocab_hash")) {
      throw DataError(
          "preprocessing fingerprint mismatch: dataset vocabulary hash " +
          hex64(data_vocab.hash()) + " != checkpoint " + rm.manifest.get("preproc.vocab_hash"));
    }
  }

  std::vector<Label> preds, golds;
  std::size_t skipped = 0;
  for (const auto& s : samples) {
    std::optional<std::string> image;
    if (rm.architecture == "multimodal") {
      image = (fs::path(opts.data_dir) / *s.image_ref).string();
      if (!fs::exists(*image)) {
        ++skipped;
        continue;
      }
    }
    const LogProb lp = rm.predict(s.title, image);
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
      if (lp[c] > lp[best]) best = c;
    }
    preds.push_back(static_cast<Label>(best));
    golds.push_back(s.label);
  }
  if (skipped > 0) std::cerr << "skipped " << skipped << " samples without images\n";
  const MetricsReport report = compute_report(preds, golds);
  write_report_files(report, opts.out, std::string("report_") + split_name_arg);
  std::cout << format_report_table(report);
  return 0;
}

int cmd_predict(const std::string& ckpt_dir, const std::string& title,
                const std::optional<std::string>& image, const std::string& encoder_spec) {
  RestoredModel rm = restore_model(ckpt_dir, encoder_spec);
  if (rm.architecture == "multimodal" && !image) {
    throw UsageError("multimodal checkpoint requires --image");
  }
  const LogProb lp = rm.predict(title, image);
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (lp[c] > lp[best]) best = c;
  }
  std::cout << "prediction: " << label_name(static_cast<Label>(best)) << "\n";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    char line[96];
    std::snprintf(line, sizeof(line), "  %-22s %.6f\n", label_name(static_cast<Label>(c)),
                  std::exp(static_cast<double>(lp[c])));
    std::cout << line;
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"fine-grained fake news classification toolkit"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* cmd, CommonOpts& o, bool needs_data, bool needs_out) {
    auto* d = cmd->add_option("--data-dir", o.data_dir, "dataset directory")
                  ->envname("FFN_DATA_DIR");
    if (needs_data) d->required();
    auto* out = cmd->add_option("--out", o.out, "output directory");
    if (needs_out) out->required();
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--config", o.config_file,
                    "key = value file; explicit flags override file values");
  };

  CommonOpts stats_opts;
  auto* stats = app.add_subcommand("stats", "class distribution and length analysis");
  add_common(stats, stats_opts, true, true);

  CommonOpts preprocess_opts;
  auto* preprocess = app.add_subcommand("preprocess", "build and save the vocabulary");
  add_common(preprocess, preprocess_opts, true, true);

  CommonOpts fetch_opts;
  auto* fetch = app.add_subcommand("fetch-images", "download images into a cache");
  add_common(fetch, fetch_opts, true, true);

  CommonOpts synth_opts;
  std::size_t synth_per_class = 20;
  bool synth_images = false;
  auto* synth = app.add_subcommand("synth", "generate a synthetic desk-scale dataset");
  add_common(synth, synth_opts, false, true);
  synth->add_option("--per-class", synth_per_class, "train samples per class");
  synth->add_flag("--images", synth_images, "also generate class-correlated images");

  TrainOpts train_opts;
  auto* train_cmd = app.add_subcommand("train", "train a model");
  add_common(train_cmd, train_opts, true, true);
  train_cmd->add_option("--model", train_opts.model, "cnn | bilstm | bert | multimodal");
  train_cmd->add_option("--embedding-init", train_opts.embedding_init, "random | glove");
  train_cmd->add_option("--embedding-mode", train_opts.embedding_mode, "static | dynamic");
  train_cmd->add_option("--glove", train_opts.glove_path, "GloVe vectors file (word v1..v300)");
  train_cmd->add_option("--lr", train_opts.lr, "learning rate (default 1e-3; 2e-5 for bert)");
  train_cmd->add_option("--batch-size", train_opts.batch_size, "batch size");
  train_cmd->add_option("--max-epochs", train_opts.max_epochs,
                        "epoch cap (default 50; 2 for bert)");
  train_cmd->add_option("--patience", train_opts.patience, "early stopping patience");
  train_cmd->add_option("--image-size", train_opts.image_size,
                        "multimodal input size (560 canonical)");
  train_cmd->add_option("--bert-vocab", train_opts.bert_vocab, "wordpiece vocabulary file");
  train_cmd->add_option("--bert-encoder", train_opts.bert_encoder,
                        "'stub' or encoder asset directory");

  CommonOpts eval_opts;
  std::string eval_ckpt, eval_split = "test";
  auto* evaluate = app.add_subcommand("evaluate", "evaluate a checkpoint on a split");
  add_common(evaluate, eval_opts, true, true);
  evaluate->add_option("--checkpoint", eval_ckpt, "checkpoint directory")->required();
  evaluate->add_option("--split", eval_split, "train | validation | test");

  std::string predict_ckpt, predict_title, predict_encoder;
  std::optional<std::string> predict_image;
  auto* predict = app.add_subcommand("predict", "classify one title (+ optional image)");
  predict->add_option("--checkpoint", predict_ckpt, "checkpoint directory")->required();
  predict->add_option("--title", predict_title, "news title text")->required();
  predict->add_option("--image", predict_image, "image file (multimodal models)");
  predict->add_option("--bert-encoder", predict_encoder, "'stub' or encoder asset directory");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 1;  // usage error
    }

    if (stats->parsed()) {
      apply_config_file(*stats, stats_opts.config_file);
      return cmd_stats(stats_opts);
    }
    if (preprocess->parsed()) {
      apply_config_file(*preprocess, preprocess_opts.config_file);
      return cmd_preprocess(preprocess_opts);
    }
    if (fetch->parsed()) {
      apply_config_file(*fetch, fetch_opts.config_file);
      return cmd_fetch_images(fetch_opts);
    }
    if (synth->parsed()) {
      apply_config_file(*synth, synth_opts.config_file);
      return cmd_synth(synth_opts, synth_per_class, synth_images);
    }
    if (train_cmd->parsed()) {
      apply_config_file(*train_cmd, train_opts.config_file);
      return cmd_train(train_opts);
    }
    if (evaluate->parsed()) {
      apply_config_file(*evaluate, eval_opts.config_file);
      return cmd_evaluate(eval_opts, eval_ckpt, eval_split);
    }
    if (predict->parsed()) {
      return cmd_predict(predict_ckpt, predict_title, predict_image, predict_encoder);
    }
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const TrainError& e) {
    std::cerr << "training error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ffn::cli
