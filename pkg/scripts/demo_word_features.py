"""Learn per-word features from three one-hot sentence vectors.

The three sentences share a 7-word vocabulary; a 7-3-7 autoencoder is
trained to reconstruct them, and the input-to-hidden weights become a
3-feature column per word.
"""

import numpy as np

from topicvec.autoencoder import (NetTrainConfig, encode, init_net,
                                  reconstruction_error, train_autoencoder,
                                  word_feature_matrix)

VOCAB = ["el", "gato", "canta", "negro", "es", "bellisimo", "pato"]
SENTENCES = np.array([
    [1, 1, 1, 0, 0, 0, 0],  # el gato canta
    [1, 1, 0, 1, 1, 1, 0],  # el gato negro es bellisimo
    [1, 0, 1, 0, 0, 0, 1],  # el pato canta
], dtype=float)
HIDDEN = 3
SEED = 0


def main():
    cfg = NetTrainConfig(seed=SEED)
    rng = np.random.default_rng(cfg.seed)
    initial = init_net([7, HIDDEN, 7], ["sigmoid", "linear"], cfg.init_scale, rng)
    before = reconstruction_error(initial, SENTENCES)

    net = train_autoencoder(SENTENCES, HIDDEN, cfg)
    after = reconstruction_error(net, SENTENCES)
    print(f"mean reconstruction error: {before:.6f} -> {after:.2e}")

    W = word_feature_matrix(SENTENCES, HIDDEN, cfg)
    print(f"\nword feature matrix ({HIDDEN} x {len(VOCAB)}):")
    for word, col in zip(VOCAB, W.T):
        print(f"  {word:>10s}  " + "  ".join(f"{v:+.3f}" for v in col))

    print("\nsentence encodings:")
    for i, s in enumerate(SENTENCES):
        print(f"  sentence_{i + 1}: "
              + "  ".join(f"{v:+.4f}" for v in encode(net, s)))


if __name__ == "__main__":
    main()
