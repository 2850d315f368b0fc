from setuptools import setup

setup(
    name='calltool',
    version='1.0',
    py_modules=['calltool'],
    install_requires=[
        'click>=8.0',
        'left-pad==1.2.0',
        'rich',
    ],
)
