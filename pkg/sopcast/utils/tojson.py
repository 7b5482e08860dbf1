# -*- coding: utf-8 -*-

"""
JSON Encoding Helper Classes
----------------------------

Model, bundle and report documents are written through
:class:`JSONSerializer`. Floats are emitted with Python's shortest
round-trip representation, so a document read back reproduces every
parameter bit-for-bit.
"""

import json
import numpy as np
from .struct import Struct

class SopcastJsonEncoder(json.JSONEncoder):
    """JSON convertor for classes used in sopcast"""

    def default(self, obj):
        """Conversion rules"""
        if isinstance(obj, JSONSerializer):
            return obj.to_json()
        elif isinstance(obj, Struct):
            return obj.to_dict()
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        return json.JSONEncoder.default(self, obj)

class JSONSerializer(object):
    """A mixin class to serialize sopcast objects"""

    #: JSON dumper instance, customize this for derived classes
    _json_dumper_ = SopcastJsonEncoder
    #: Public members that are serialized for this class
    _json_public_ = None

    #: (member, function) mapping for members that are transformed before
    #  serializing
    _json_mod_map_ = None

    def encode(self, **kwargs):
        """Encode the object into a JSON string

        The ``kwargs`` passed are passed directly to json.dumps method

        Returns:
            str: Valid JSON data
        """
        return json.dumps(self.to_json(),
                          cls=self._json_dumper_, **kwargs)

    def to_json(self):
        """Return a json serializable object"""
        public = self._json_public_ or []
        modifiers = self._json_mod_map_ or dict()

        retval = dict()
        for key in public:
            retval[key] = getattr(self, key, None)
        for key, modfunc in modifiers.items():
            retval[key] = modfunc(getattr(self, key, None))
        return retval

    def write_json(self, filename, indent=2):
        """Write the JSON document to a file

        Args:
            filename (path): Output file
            indent (int): Indentation used for pretty printing
        """
        with open(filename, 'w', encoding="utf-8", newline="\n") as fh:
            fh.write(self.encode(indent=indent))
            fh.write("\n")

def read_json(filename):
    """Load a JSON document written by :meth:`JSONSerializer.write_json`"""
    with open(filename, 'r', encoding="utf-8") as fh:
        return json.load(fh)
