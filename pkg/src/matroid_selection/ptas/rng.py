"""
Counter-Based Random Streams
One Philox stream per (seed, trial, purpose); element t reads draw t
"""
import numpy as np

VALUES = 0
COINS = 1


class TrialStreams:
    """Reproducible, independent generators keyed by seed, trial and purpose"""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._key = np.random.SeedSequence(self.seed).generate_state(2, np.uint64)

    def generator(self, trial: int, purpose: int = COINS) -> np.random.Generator:
        counter = np.array([0, 0, purpose, trial], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=self._key, counter=counter))

    def coins(self, trial: int, n: int) -> np.ndarray:
        """Uniform coins for the per-bin policies, one per element"""
        return self.generator(trial, COINS).random(n)

    def uniforms(self, trial: int, n: int) -> np.ndarray:
        """Uniforms used to sample the realized values, one per element"""
        return self.generator(trial, VALUES).random(n)


__all__ = ['TrialStreams', 'VALUES', 'COINS']
