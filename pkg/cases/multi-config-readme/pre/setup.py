from setuptools import setup

install_requires = [
    'click>=8.0.4',
    'prettytable',
    'requests>=2.25.0',
    'rich==14.0.0',
]

setup(
    name='cli-tables',
    version='6.1.0',
    packages=['cli_tables'],
    install_requires=install_requires,
)
