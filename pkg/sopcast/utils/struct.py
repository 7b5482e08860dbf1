# -*- coding: utf-8 -*-

"""\
Struct Module
-------------

Implements :class:`~sopcast.utils.struct.Struct`, the ordered mapping that
holds configuration trees and JSON documents throughout sopcast.

"""

import copy
from collections import OrderedDict
from collections.abc import Mapping, MutableMapping
from abc import ABCMeta
import yaml
import numpy as np

def _merge(this, that):
    """Recursive merge from *that* mapping to *this* mapping

    New entries are added, and existing entries are updated. Nested mappings
    are merged rather than replaced. Inserted values are deep copies, so
    later merges never write through to *that*.

    Args:
        this (dict): Mapping that is updated
        that (dict): Mapping to be merged. Unmodified within the function
    """
    for key, vother in that.items():
        vorig = this.get(key, None)
        if (isinstance(vorig, Mapping) and
                isinstance(vother, Mapping) and
                (id(vorig) != id(vother))):
            _merge(vorig, vother)
        else:
            this[key] = copy.deepcopy(vother)

def merge(a, b, *args):
    """Recursively merge mappings and return consolidated dict.

    Entries from later dictionaries overwrite entries from preceeding ones.

    Returns:
        dict: The consolidated map
    """
    out = a.__class__()
    for other in (a, b) + args:
        _merge(out, other)
    return out

def gen_yaml_decoder(cls):
    """Generate a YAML loader that builds ``cls`` for every mapping

    Args:
        cls: Class used for mapping
    """
    def struct_constructor(loader, node):
        """Custom constructor for Struct"""
        return cls(loader.construct_pairs(node, deep=True))

    class StructYAMLLoader(yaml.SafeLoader):
        """Safe YAML loader producing Struct mappings"""

    StructYAMLLoader.add_constructor(
        yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG,
        struct_constructor)
    return StructYAMLLoader

def gen_yaml_encoder(cls):
    """Generate a YAML dumper that understands ``cls`` and numpy data

    Args:
        cls: Class used for mapping
    """
    def struct_representer(dumper, data):
        """Convert Struct to dictionary for YAML"""
        return dumper.represent_dict(list(data.items()))

    def numpy_representer(dumper, data):
        """Convert numpy arrays to YAML lists"""
        return dumper.represent_list(data.tolist())

    def numpy_scalar_representer(dumper, data):
        """Convert numpy scalars to native YAML scalars"""
        if isinstance(data, np.integer):
            return dumper.represent_int(int(data))
        return dumper.represent_float(float(data))

    class StructYAMLDumper(yaml.SafeDumper):
        """YAML dumper for Struct data"""

    StructYAMLDumper.add_representer(cls, struct_representer)
    StructYAMLDumper.add_representer(np.ndarray, numpy_representer)
    StructYAMLDumper.add_multi_representer(np.integer,
                                           numpy_scalar_representer)
    StructYAMLDumper.add_multi_representer(np.floating,
                                           numpy_scalar_representer)
    return StructYAMLDumper

class StructMeta(ABCMeta):
    """YAML interface registration

    Every class in the Struct hierarchy gets its own loader/dumper pair so that
    loading a YAML file returns instances of that class at every level.
    """

    def __new__(mcls, name, bases, cdict):
        yaml_decoder = cdict.pop("yaml_decoder", None)
        yaml_encoder = cdict.pop("yaml_encoder", None)
        cls = super(StructMeta, mcls).__new__(mcls, name, bases, cdict)
        cls.yaml_decoder = yaml_decoder or gen_yaml_decoder(cls)
        cls.yaml_encoder = yaml_encoder or gen_yaml_encoder(cls)
        return cls

class Struct(OrderedDict, MutableMapping, metaclass=StructMeta):
    """Dictionary that supports both key and attribute access.

    Features:

       #. Preserves ordering of members as initialized
       #. Provides attribute and dictionary-style lookups
       #. Dotted-path lookup and assignment (``"forecast.short.window"``)
       #. Read/write YAML formatted data
    """

    @classmethod
    def from_yaml(cls, stream):
        """Initialize mapping from a YAML string or file handle.

        Returns:
            Struct: YAML data as a python object
        """
        data = yaml.load(stream, Loader=cls.yaml_decoder)
        return cls() if data is None else cls(data)

    @classmethod
    def load_yaml(cls, filename):
        """Load a YAML file

        Args:
            filename (str): Absolute path to YAML file

        Returns:
            Struct: YAML data as python object
        """
        with open(filename, 'r') as fh:
            return cls.from_yaml(fh)

    def __setitem__(self, key, value):
        if (isinstance(value, Mapping) and
                not isinstance(value, Struct)):
            out = self.__class__()
            _merge(out, value)
            super(Struct, self).__setitem__(key, out)
        else:
            super(Struct, self).__setitem__(key, value)

    def __setattr__(self, key, value):
        if key.startswith('_OrderedDict'):
            super(Struct, self).__setattr__(key, value)
        else:
            self[key] = value

    def __getattr__(self, key):
        if key.startswith('__') or key not in self:
            raise AttributeError("No attribute named "+key)
        return self[key]

    def merge(self, *args):
        """Recursively update dictionary

        Merge entries from maps provided such that new entries are added and
        existing entries are updated.
        """
        for other in args:
            _merge(self, other)

    def get_path(self, path, default=None):
        """Lookup a value using a dotted path

        Args:
            path (str): Keys separated by ``.``, e.g., ``forecast.short.window``
            default: Value returned when any key along the path is missing
        """
        node = self
        for key in path.split("."):
            if not isinstance(node, Mapping) or key not in node:
                return default
            node = node[key]
        return node

    def set_path(self, path, value):
        """Assign a value using a dotted path, creating nodes as necessary

        Args:
            path (str): Keys separated by ``.``
            value: Value to assign at the leaf
        """
        keys = path.split(".")
        node = self
        for key in keys[:-1]:
            if not isinstance(node.get(key, None), Mapping):
                node[key] = self.__class__()
            node = node[key]
        node[keys[-1]] = value

    def to_yaml(self, stream=None, default_flow_style=False, **kwargs):
        """Convert mapping to YAML format.

        Args:
            stream (file): A file handle where YAML is output

            default_flow_style (bool):
                - False - pretty printing
                - True  - No pretty printing
        """
        return yaml.dump(self, stream=stream,
                         Dumper=self.__class__.yaml_encoder,
                         default_flow_style=default_flow_style,
                         **kwargs)

    def to_dict(self):
        """Return a plain nested ``dict`` copy"""
        return {k: (v.to_dict() if isinstance(v, Struct) else v)
                for k, v in self.items()}
