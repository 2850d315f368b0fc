import numpy
import httpx
