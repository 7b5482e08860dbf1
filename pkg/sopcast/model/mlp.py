# -*- coding: utf-8 -*-

"""\
Feedforward neural network
--------------------------

A small multilayer perceptron written directly against numpy: tanh hidden
layers, identity output, Glorot-uniform initialization, backpropagation of the
half mean squared error and an Adam optimizer with early stopping.

Weights are stored with shape ``(fan_out, fan_in)`` and applied to row-vector
batches as ``x @ W.T + b``.
"""

import json
import logging
from collections import namedtuple, OrderedDict

import numpy as np

from ..utils.errors import (InvalidParameterError, InsufficientDataError,
                            DimensionError, ModelLoadError,
                            VersionMismatchError)
from ..utils.tojson import JSONSerializer, read_json

_lgr = logging.getLogger(__name__)

#: Version tag written to every model document
FORMAT_VERSION = "1"

#: Hidden-layer activations understood by the model
ACTIVATIONS = ("tanh",)

#: Gradients of the loss with respect to every parameter
Gradients = namedtuple("Gradients", ["weights", "biases", "loss"])

#: Per-epoch losses; entry 0 is the untrained model
FitHistory = namedtuple("FitHistory", ["train_loss", "val_loss", "best_epoch"])

class TrainConfig(JSONSerializer):
    """Optimizer and early-stopping settings"""

    _json_public_ = ("learning_rate batch_size max_epochs patience "
                     "validation_fraction seed beta1 beta2 epsilon").split()

    def __init__(self, learning_rate=1.0e-3, batch_size=32, max_epochs=200,
                 patience=10, validation_fraction=0.2, seed=None,
                 beta1=0.9, beta2=0.999, epsilon=1.0e-8):
        self.learning_rate = float(learning_rate)
        self.batch_size = int(batch_size)
        self.max_epochs = int(max_epochs)
        self.patience = int(patience)
        self.validation_fraction = float(validation_fraction)
        self.seed = None if seed is None else int(seed)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.epsilon = float(epsilon)
        if not self.learning_rate > 0.0:
            raise InvalidParameterError("learning_rate must be positive")
        if not 0.0 < self.validation_fraction < 1.0:
            raise InvalidParameterError(
                "validation_fraction must be in (0, 1)")
        if self.patience < 1:
            raise InvalidParameterError("patience must be >= 1")
        if self.batch_size < 1 or self.max_epochs < 0:
            raise InvalidParameterError(
                "batch_size must be >= 1 and max_epochs >= 0")

    @classmethod
    def from_config(cls, train_cfg, seed=None):
        """Create from the ``sopcast.train`` configuration node

        Args:
            train_cfg (Struct): Configuration node
            seed (int): Seed used when the node does not set one
        """
        node_seed = train_cfg.get("seed", None)
        return cls(
            learning_rate=train_cfg.get("learning_rate", 1.0e-3),
            batch_size=train_cfg.get("batch_size", 32),
            max_epochs=train_cfg.get("max_epochs", 200),
            patience=train_cfg.get("patience", 10),
            validation_fraction=train_cfg.get("validation_fraction", 0.2),
            seed=seed if node_seed is None else node_seed)

    def replace(self, **kwargs):
        """Return a copy with some fields changed"""
        opts = self.to_json()
        opts.update(kwargs)
        return TrainConfig(**opts)

class MlpModel(JSONSerializer):
    """Multilayer perceptron parameters"""

    _json_public_ = ["format_version", "sizes", "activation", "weights",
                     "biases", "seed", "training_meta"]

    format_version = FORMAT_VERSION

    def __init__(self, sizes, weights, biases, seed=None,
                 activation="tanh", training_meta=None):
        self.sizes = [int(s) for s in sizes]
        self.weights = [np.array(w, dtype=np.float64) for w in weights]
        self.biases = [np.array(b, dtype=np.float64) for b in biases]
        self.seed = seed
        self.activation = activation
        self.training_meta = OrderedDict(training_meta or {})
        self._validate()

    def _validate(self):
        if len(self.sizes) < 2 or min(self.sizes) < 1:
            raise InvalidParameterError(
                "Layer sizes must have >= 2 entries, all >= 1: %s"%self.sizes)
        if self.activation not in ACTIVATIONS:
            raise InvalidParameterError(
                "Unsupported activation: %s"%self.activation)
        nlayers = len(self.sizes) - 1
        if len(self.weights) != nlayers or len(self.biases) != nlayers:
            raise DimensionError("Expected %d weight/bias pairs"%nlayers)
        for i, (wmat, bvec) in enumerate(zip(self.weights, self.biases)):
            wshape = (self.sizes[i + 1], self.sizes[i])
            if wmat.shape != wshape or bvec.shape != (self.sizes[i + 1],):
                raise DimensionError(
                    "Layer %d has weights %s and biases %s; expected %s"%(
                        i, wmat.shape, bvec.shape, wshape))
            if not (np.all(np.isfinite(wmat)) and np.all(np.isfinite(bvec))):
                raise InvalidParameterError(
                    "Layer %d has non-finite parameters"%i)

    def __repr__(self):
        return "<MlpModel: %s>"%"-".join(str(s) for s in self.sizes)

    @property
    def n_inputs(self):
        return self.sizes[0]

    @property
    def n_outputs(self):
        return self.sizes[-1]

    @property
    def n_params(self):
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))

    def copy(self):
        """Return a deep copy of the model"""
        return MlpModel(self.sizes, [w.copy() for w in self.weights],
                        [b.copy() for b in self.biases], self.seed,
                        self.activation, self.training_meta)

    def forward(self, x):
        """Shortcut for :func:`forward`"""
        return forward(self, x)

def mlp_new(sizes, seed):
    """Create a network with Glorot-uniform weights and zero biases

    Args:
        sizes (list): Layer sizes ``[n_in, hidden..., n_out]``
        seed (int): Seed for :func:`numpy.random.default_rng`

    Returns:
        MlpModel: The initialized network
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2 or min(sizes) < 1:
        raise InvalidParameterError(
            "Layer sizes must have >= 2 entries, all >= 1: %s"%sizes)
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpModel(sizes, weights, biases, seed=seed)

def _as_batch(model, x):
    arr = np.asarray(x, dtype=np.float64)
    single = arr.ndim == 1
    arr2d = arr[None, :] if single else arr
    if arr2d.ndim != 2 or arr2d.shape[1] != model.n_inputs:
        raise DimensionError(
            "Model expects %d inputs, got array of shape %s"%(
                model.n_inputs, arr.shape))
    return arr2d, single

def _forward_pass(model, xbatch):
    """Return the activations of every layer, input first"""
    acts = [xbatch]
    last = len(model.weights) - 1
    for i, (wmat, bvec) in enumerate(zip(model.weights, model.biases)):
        zval = acts[-1] @ wmat.T + bvec
        acts.append(zval if i == last else np.tanh(zval))
    return acts

def forward(model, x):
    """Evaluate the network

    Args:
        model (MlpModel): Network
        x (array): Input vector ``(n_in,)`` or batch ``(n, n_in)``

    Returns:
        ndarray: Output vector or batch
    """
    xbatch, single = _as_batch(model, x)
    out = _forward_pass(model, xbatch)[-1]
    return out[0] if single else out

def loss_mse(pred, target):
    """Half mean squared error over all elements"""
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise DimensionError("Prediction %s and target %s shapes differ"%(
            pred.shape, target.shape))
    if pred.size == 0:
        raise InsufficientDataError("Loss of an empty batch is undefined")
    return 0.5 * float(np.mean((pred - target) ** 2))

def backward(model, x, target):
    """Gradients of :func:`loss_mse` with respect to every parameter

    Args:
        model (MlpModel): Network
        x (array): Input vector or batch
        target (array): Target vector or batch matching the output

    Returns:
        Gradients: ``(weights, biases, loss)`` with gradients shaped like the
        parameters
    """
    xbatch, single = _as_batch(model, x)
    tbatch = np.asarray(target, dtype=np.float64)
    if single:
        tbatch = tbatch[None, ...]
    if tbatch.shape != (xbatch.shape[0], model.n_outputs):
        raise DimensionError(
            "Target shape %s does not match model output (%d)"%(
                np.asarray(target).shape, model.n_outputs))
    acts = _forward_pass(model, xbatch)
    out = acts[-1]
    loss = loss_mse(out, tbatch)
    delta = (out - tbatch) / out.size
    nlayers = len(model.weights)
    dweights = [None] * nlayers
    dbiases = [None] * nlayers
    for i in range(nlayers - 1, -1, -1):
        dweights[i] = delta.T @ acts[i]
        dbiases[i] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ model.weights[i]) * (1.0 - acts[i] ** 2)
    return Gradients(dweights, dbiases, loss)

def _validation_split(nsamp, fraction):
    nval = int(round(nsamp * fraction))
    if nval < 1 or nsamp - nval < 1:
        return np.arange(nsamp), np.arange(nsamp)
    return np.arange(nsamp - nval), np.arange(nsamp - nval, nsamp)

def fit(model, inputs, targets, cfg=None):
    """Train a network with Adam and early stopping

    The last ``cfg.validation_fraction`` of the samples (in the given order)
    is held out for early stopping. The returned model carries the parameters
    of the epoch with the lowest validation loss; the input model is not
    modified.

    Args:
        model (MlpModel): Initial network
        inputs (array): ``(n, n_in)`` training inputs
        targets (array): ``(n, n_out)`` training targets
        cfg (TrainConfig): Optimizer settings

    Returns:
        tuple: ``(trained model, FitHistory)``
    """
    cfg = cfg or TrainConfig()
    if np.size(inputs) == 0:
        raise InsufficientDataError("Cannot train on an empty dataset")
    xall, _ = _as_batch(model, inputs)
    tall = np.asarray(targets, dtype=np.float64)
    if tall.ndim == 1:
        tall = tall[:, None]
    if tall.shape != (xall.shape[0], model.n_outputs):
        raise DimensionError(
            "Targets of shape %s do not match %d samples x %d outputs"%(
                np.shape(targets), xall.shape[0], model.n_outputs))

    tidx, vidx = _validation_split(xall.shape[0], cfg.validation_fraction)
    xtrain, ttrain = xall[tidx], tall[tidx]
    xval, tval = xall[vidx], tall[vidx]

    current = model.copy()
    best = model.copy()
    train_hist = [loss_mse(forward(current, xtrain), ttrain)]
    val_hist = [loss_mse(forward(current, xval), tval)]
    best_loss, best_epoch, wait = val_hist[0], 0, 0

    seed = cfg.seed if cfg.seed is not None else model.seed
    rng = np.random.default_rng(seed)
    params = current.weights + current.biases
    mom1 = [np.zeros_like(p) for p in params]
    mom2 = [np.zeros_like(p) for p in params]
    tstep = 0
    ntrain = xtrain.shape[0]
    for epoch in range(1, cfg.max_epochs + 1):
        order = rng.permutation(ntrain)
        for beg in range(0, ntrain, cfg.batch_size):
            bidx = order[beg:beg + cfg.batch_size]
            grads = backward(current, xtrain[bidx], ttrain[bidx])
            tstep += 1
            lr_t = (cfg.learning_rate *
                    np.sqrt(1.0 - cfg.beta2 ** tstep) /
                    (1.0 - cfg.beta1 ** tstep))
            for p, g, m1, m2 in zip(params, grads.weights + grads.biases,
                                    mom1, mom2):
                m1 *= cfg.beta1
                m1 += (1.0 - cfg.beta1) * g
                m2 *= cfg.beta2
                m2 += (1.0 - cfg.beta2) * g * g
                p -= lr_t * m1 / (np.sqrt(m2) + cfg.epsilon)

        train_hist.append(loss_mse(forward(current, xtrain), ttrain))
        val_hist.append(loss_mse(forward(current, xval), tval))
        if val_hist[-1] < best_loss:
            best_loss, best_epoch, wait = val_hist[-1], epoch, 0
            best = current.copy()
        else:
            wait += 1
            if wait >= cfg.patience:
                _lgr.debug("Early stopping at epoch %d (best %d)",
                           epoch, best_epoch)
                break

    best.training_meta = OrderedDict([
        ("epochs_run", len(val_hist) - 1),
        ("best_epoch", best_epoch),
        ("best_val_loss", best_loss),
        ("train_config", cfg.to_json()),
    ])
    return best, FitHistory(train_hist, val_hist, best_epoch)

def save_model(model):
    """Return the model as a JSON-compatible document"""
    return json.loads(model.encode())

def _load_array(doc, shape, what):
    try:
        arr = np.array(doc, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ModelLoadError("Malformed %s: %s"%(what, exc))
    if arr.shape != shape:
        raise ModelLoadError("%s has shape %s, expected %s"%(
            what, arr.shape, shape))
    return arr

def load_model(document):
    """Rebuild a model from :func:`save_model` output

    Args:
        document: Mapping, or a JSON string

    Raises:
        VersionMismatchError: Unsupported ``format_version``
        ModelLoadError: Malformed or incomplete document
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except ValueError as exc:
            raise ModelLoadError("Model document is not valid JSON: %s"%exc)
    if not isinstance(document, dict):
        raise ModelLoadError("Model document must be a JSON object")
    version = document.get("format_version", None)
    if version is None:
        raise ModelLoadError("Model document has no format_version")
    if str(version) != FORMAT_VERSION:
        raise VersionMismatchError(
            "Model format version %s is not supported (expected %s)"%(
                version, FORMAT_VERSION))
    missing = [k for k in ("sizes", "activation", "weights", "biases")
               if k not in document]
    if missing:
        raise ModelLoadError("Model document is missing: %s"%(
            ", ".join(missing)))
    try:
        sizes = [int(s) for s in document["sizes"]]
    except (TypeError, ValueError):
        raise ModelLoadError("Malformed layer sizes")
    nlayers = len(sizes) - 1
    if nlayers < 1 or len(document["weights"]) != nlayers or \
            len(document["biases"]) != nlayers:
        raise ModelLoadError("Layer count does not match sizes %s"%sizes)
    weights = [_load_array(w, (sizes[i + 1], sizes[i]), "weights[%d]"%i)
               for i, w in enumerate(document["weights"])]
    biases = [_load_array(b, (sizes[i + 1],), "biases[%d]"%i)
              for i, b in enumerate(document["biases"])]
    try:
        return MlpModel(sizes, weights, biases,
                        seed=document.get("seed", None),
                        activation=document["activation"],
                        training_meta=document.get("training_meta", None))
    except (InvalidParameterError, DimensionError) as exc:
        raise ModelLoadError(str(exc))

def write_model(model, filename):
    """Write a model document to ``filename``"""
    model.write_json(filename)
    _lgr.debug("Wrote model %r to %s", model, filename)

def read_model(filename):
    """Load a model document from ``filename``"""
    try:
        document = read_json(filename)
    except ValueError as exc:
        raise ModelLoadError("%s is not a valid model document: %s"%(
            filename, exc))
    return load_model(document)
