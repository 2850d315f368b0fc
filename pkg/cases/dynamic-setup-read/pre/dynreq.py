import pyrsistent
import requests


def fetch(url):
    return requests.get(url)
