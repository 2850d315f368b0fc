from setuptools import setup

install_requires = [
    'left-pad==1.2.0',
    'requests>=2.25',
]

setup(
    name='vartool',
    version='0.9',
    install_requires=install_requires,
)
