from setuptools import setup

f = open('reqs/core.txt')
REQS = f.read().splitlines()
f.close()

setup(
    name='dynreq',
    version='4.2.0',
    py_modules=['dynreq'],
    install_requires=REQS,
)
